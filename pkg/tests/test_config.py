import pytest

from config import Config
from lgmirror.errors import InvalidInputError


def test_defaults():
    cfg = Config()
    assert (cfg.K, cfg.N, cfg.Q) == (5, 5, 3)
    assert cfg.S == 1e-2
    assert cfg.as_dict()["out"] == "reports"


def test_from_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("# sweep\nK=7\nS=1e-3\nout=tmp-reports\n")
    cfg = Config.from_file(path)
    assert cfg.K == 7
    assert cfg.S == 1e-3
    assert cfg.OUT == "tmp-reports"
    assert cfg.N == 5


def test_missing_file(tmp_path):
    with pytest.raises(InvalidInputError):
        Config.from_file(tmp_path / "absent.conf")


@pytest.mark.parametrize("key,value", [("COLOR", "red"), ("K", "five"), ("S", "small")])
def test_rejects_bad_entries(key, value):
    with pytest.raises(InvalidInputError):
        Config({key: value})


def test_merged_skips_none():
    base = Config({"k": "9"})
    merged = base.merged({"K": None, "Q": 2, "STEPS": None})
    assert merged.K == 9
    assert merged.Q == 2
    assert merged.STEPS == 400
    assert base.Q == 3

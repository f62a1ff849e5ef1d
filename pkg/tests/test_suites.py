import json

import pytest

from lgmirror.errors import InvalidInputError
from lgmirror.suites import SUITES, get_all_suites, get_suite, run_suite


def test_registry():
    assert get_suite("cqs").name == "cqs"
    assert {s.name for s in get_all_suites()} == set(SUITES)
    assert "all" in SUITES
    with pytest.raises(InvalidInputError):
        get_suite("nosuch")


def test_cqs_suite():
    report = run_suite("cqs", {"N": 5, "Q": 3})
    assert report.exit_code == 0, report.checks
    assert report.payload["non_special"] == [2, 4]
    assert report.payload["order_map"] == {"3": 4, "1": 3, "0": 0}


def test_pick_suite_payload():
    report = run_suite("pick", {"K": 7})
    assert report.exit_code == 0
    assert (report.payload["interior"], report.payload["boundary"], report.payload["two_volume"]) == (4, 10, 16)


@pytest.mark.parametrize("name", ["gram", "braid", "sturm", "quiver"])
def test_exact_suites_pass(name):
    report = run_suite(name)
    failed = [c.name for c in report.checks if not c.passed]
    assert report.exit_code == 0, (failed, report.error)


def test_bad_singularity_is_usage_error():
    report = run_suite("cqs", {"N": 6, "Q": 3})
    assert report.exit_code == 2
    assert report.error.startswith("InvalidInputError")


def test_even_k_is_usage_error():
    report = run_suite("palais-smale", {"K": 4, "SAMPLES": 10})
    assert report.exit_code == 2
    assert report.status.value == "fail"


def test_report_files_are_reproducible(tmp_path):
    run_suite("pick", {"K": 5}, out=tmp_path)
    first = (tmp_path / "pick.json").read_bytes()
    run_suite("pick", {"K": 5}, out=tmp_path)
    assert (tmp_path / "pick.json").read_bytes() == first
    data = json.loads(first)
    assert data["suite"] == "pick"
    assert data["params"]["k"] == 5

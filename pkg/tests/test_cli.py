from cli import main
from lgmirror.reports import read_trajectories


def test_list():
    assert main(["--list"]) == 0


def test_no_command():
    assert main([]) == 2


def test_pick(tmp_path):
    assert main(["pick", "--k", "7", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "pick.json").is_file()


def test_unknown_suite(tmp_path):
    assert main(["nosuch", "--out", str(tmp_path)]) == 2


def test_config_errors(tmp_path):
    assert main(["pick", "--config", str(tmp_path / "absent.conf")]) == 2
    bad = tmp_path / "bad.conf"
    bad.write_text("COLOUR=blue\n")
    assert main(["pick", "--config", str(bad)]) == 2


def test_config_file_and_flag_override(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text(f"K=9\nOUT={tmp_path / 'from-file'}\n")
    assert main(["pick", "--config", str(conf), "--out", str(tmp_path / "from-flag")]) == 0
    assert (tmp_path / "from-flag" / "pick.json").is_file()
    assert not (tmp_path / "from-file").exists()


def test_constant_trajectory(tmp_path):
    csv_path = tmp_path / "c.csv"
    code = main(["trajectory", "--shape", "constant", "--t0", "1.0", "--steps", "3", "--csv", str(csv_path)])
    assert code == 0
    perm, rows = read_trajectories(csv_path)
    assert perm == list(range(6))
    assert len(rows) == 4


def test_line_needs_end_point(tmp_path):
    assert main(["trajectory", "--shape", "line", "--out", str(tmp_path)]) == 2

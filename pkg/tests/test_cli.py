import pytest

from touchviz.cli import main


@pytest.fixture
def demo_dir(tmp_path):
    assert main(["demo", "--chart", "iris", "--out", str(tmp_path / "iris")]) == 0
    return tmp_path / "iris"


class TestDemo:
    def test_writes_spec_data_and_traces(self, demo_dir):
        assert (demo_dir / "spec.json").exists()
        assert (demo_dir / "data.csv").exists()
        traces = sorted(demo_dir.glob("*.trace"))
        assert len(traces) >= 5  # covering all thirteen candidates

    def test_unknown_chart_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["demo", "--chart", "mosaic", "--out", str(tmp_path)])
        assert exc.value.code == 2


class TestReplayCommand:
    def test_replay_and_verify_roundtrip(self, demo_dir, tmp_path):
        trace = sorted(demo_dir.glob("*.trace"))[0]
        out1, out2 = tmp_path / "a.log", tmp_path / "b.log"
        base = ["replay", "--spec", str(demo_dir / "spec.json"),
                "--data", str(demo_dir / "data.csv"), "--trace", str(trace)]
        assert main(base + ["--out", str(out1)]) == 0
        assert main(base + ["--out", str(out2)]) == 0
        assert main(["verify", "--out", str(out1), "--golden", str(out2)]) == 0

    def test_verify_mismatch_exits_1(self, demo_dir, tmp_path, capsys):
        traces = sorted(demo_dir.glob("*.trace"))
        out1, out2 = tmp_path / "a.log", tmp_path / "b.log"
        common = ["replay", "--spec", str(demo_dir / "spec.json"),
                  "--data", str(demo_dir / "data.csv")]
        assert main(common + ["--trace", str(traces[2]), "--out", str(out1)]) == 0
        assert main(common + ["--trace", str(traces[3]), "--out", str(out2)]) == 0
        assert main(["verify", "--out", str(out1), "--golden", str(out2)]) == 1
        assert "diverge" in capsys.readouterr().err

    def test_missing_file_exits_1(self, tmp_path, capsys):
        code = main(["replay", "--spec", str(tmp_path / "nope.json"),
                     "--data", str(tmp_path / "nope.csv"),
                     "--trace", str(tmp_path / "nope.trace"),
                     "--out", str(tmp_path / "out.log")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_config_flag(self, demo_dir, tmp_path):
        cfg = tmp_path / "engine.cfg"
        cfg.write_text("hitToleranceDip = 30\n", encoding="utf-8")
        trace = sorted(demo_dir.glob("*.trace"))[0]
        code = main(["replay", "--spec", str(demo_dir / "spec.json"),
                     "--data", str(demo_dir / "data.csv"), "--trace", str(trace),
                     "--out", str(tmp_path / "out.log"), "--config", str(cfg)])
        assert code == 0


class TestUsage:
    def test_no_command(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_bad_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["replay", "--nope"])
        assert exc.value.code == 2

    def test_bad_snapshot_policy(self, demo_dir, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["replay", "--spec", str(demo_dir / "spec.json"),
                  "--data", str(demo_dir / "data.csv"),
                  "--trace", "x", "--out", "y", "--snapshot-every", "sometimes"])
        assert exc.value.code == 2

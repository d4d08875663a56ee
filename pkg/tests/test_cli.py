import json

import numpy as np
import pytest

from dunklwave.cli import GOLDEN_INPUT, GOLDEN_OUTPUT, main
from dunklwave.grids import SampledFunction
from dunklwave.wavelets import ScaleSpaceField

try:
    from importlib import resources

    FIXTURES = resources.files("dunklwave") / "fixtures"
except Exception:  # pragma: no cover
    FIXTURES = None

GOLD_IN = str(FIXTURES / GOLDEN_INPUT)
GOLD_OUT = str(FIXTURES / GOLDEN_OUTPUT)


@pytest.fixture()
def small_cfg(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "radius": 12.0, "panels": 24, "order": 12,
        "per_decade": 32.0, "inversion_window": [0.25, 8.0],
    }))
    return str(path)


@pytest.fixture(autouse=True)
def serial_env(monkeypatch):
    monkeypatch.delenv("DUNKLWAVE_THREADS", raising=False)


def test_no_command_prints_usage(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "fourier"])
    assert exc.value.code == 2


def test_unknown_transform_kind_rejected(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["transform", "--kind", "laplace", "--in", GOLD_IN,
              "--out", str(tmp_path / "o.csv")])
    assert exc.value.code == 2


def test_verify_translation_writes_reports(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["verify", "translation", "--out", str(out)])
    stdout = capsys.readouterr().out
    assert rc == 0
    assert "PASS translation." in stdout
    report = json.loads(out.read_text())
    assert report["suite"] == "translation"
    assert report["fail_count"] == 0
    ids = [c["id"] for c in report["checks"]]
    assert ids == sorted(ids)
    for check in report["checks"]:
        assert set(check) == {"id", "paper_ref", "measured", "tolerance", "pass"}
    csv_path = out.with_suffix(".csv")
    header = csv_path.read_text().splitlines()[0]
    assert header == "id,paper_ref,measured,tolerance,pass"


def test_verify_report_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "translation", "--out", str(a)]) == 0
    assert main(["verify", "translation", "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_transform_dual_sonine_matches_golden(tmp_path, capsys):
    out = tmp_path / "ds.csv"
    rc = main(["transform", "--kind", "dual-sonine", "--in", GOLD_IN, "--out", str(out)])
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    got = SampledFunction.from_csv(str(out))
    gold = SampledFunction.from_csv(GOLD_OUT)
    scale = np.max(np.abs(gold.values))
    assert np.max(np.abs(got.values - gold.values)) < 1e-8 * scale


def test_transform_round_trip(tmp_path, capsys):
    mid = tmp_path / "hat.csv"
    back = tmp_path / "back.csv"
    assert main(["transform", "--kind", "dunkl", "--in", GOLD_IN, "--out", str(mid)]) == 0
    assert main(["transform", "--kind", "inverse-dunkl", "--in", str(mid),
                 "--out", str(back)]) == 0
    capsys.readouterr()
    src = SampledFunction.from_csv(GOLD_IN)
    rec = SampledFunction.from_csv(str(back))
    assert np.max(np.abs(rec.values - src.values)) < 1e-10


def test_transform_dual_V_runs(tmp_path, small_cfg, capsys):
    out = tmp_path / "dv.csv"
    rc = main(["transform", "--kind", "dual-V", "--config", small_cfg,
               "--in", GOLD_IN, "--out", str(out)])
    assert rc == 0
    capsys.readouterr()
    vals = SampledFunction.from_csv(str(out))
    assert vals.values.size == 288
    assert np.all(np.isfinite(vals.values))


def test_transform_cwt_writes_field(tmp_path, small_cfg, capsys):
    out = tmp_path / "field.csv"
    rc = main(["transform", "--kind", "cwt", "--config", small_cfg,
               "--in", GOLD_IN, "--out", str(out),
               "--scale-eps", "0.5", "--scale-delta", "2.0"])
    assert rc == 0
    assert "scales" in capsys.readouterr().out
    assert out.read_text().splitlines()[0] == "a,b,re,im"
    field = ScaleSpaceField.from_csv(str(out))
    assert field.values.shape[1] == 288
    assert abs(field.a_grid.eps - 0.5) < 1e-12


def test_invert_round_trip(tmp_path, small_cfg, capsys):
    data = tmp_path / "ds.csv"
    rec = tmp_path / "rec.csv"
    assert main(["transform", "--kind", "dual-sonine", "--in", GOLD_IN,
                 "--out", str(data)]) == 0
    rc = main(["invert", "--config", small_cfg, "--in", str(data),
               "--out", str(rec), "--reference", GOLD_IN])
    assert rc == 0
    stdout = capsys.readouterr().out
    line = [ln for ln in stdout.splitlines() if "relative weighted L2" in ln]
    assert line
    err = float(line[0].rsplit(" ", 1)[1])
    assert err < 5e-2
    assert SampledFunction.from_csv(str(rec)).values.size == 288


def test_invert_window_outside_scale_grid(tmp_path, small_cfg, capsys):
    rc = main(["invert", "--config", small_cfg, "--in", GOLD_IN,
               "--out", str(tmp_path / "rec.csv"),
               "--scale-eps", "1.0", "--scale-delta", "2.0"])
    assert rc == 2
    assert "outside the span" in capsys.readouterr().err


def test_config_error_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"profile": {"kind": "power-gaussian"}}))
    rc = main(["invert", "--config", str(cfg), "--in", GOLD_IN,
               "--out", str(tmp_path / "rec.csv")])
    assert rc == 2
    assert "power is required" in capsys.readouterr().err


def test_unreadable_input_exits_2(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    rc = main(["transform", "--kind", "dunkl", "--in", str(empty),
               "--out", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err

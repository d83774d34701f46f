import json

import pytest

from uqtorus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_text(capsys):
    code, out, _ = run(capsys, "eval", "E*F - F*E", "--p", "2")
    assert code == 0
    assert out.strip() == "(-1/2*z^2)*K + (1/2*z^2)*K^3"


def test_eval_json_matches_option_form(capsys):
    _, a, _ = run(capsys, "eval", "K^-1*E", "--format", "json")
    _, b, _ = run(capsys, "eval", "--expr", "K^-1*E", "--format", "json")
    assert a == b and json.loads(a)


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "E*(F+", "--p", "2")
    assert code == 2
    assert "parse error" in err and "^" in err


@pytest.mark.parametrize("p", ["1", "0"])
def test_build_rejects_small_p(capsys, p):
    code, _, err = run(capsys, "build", "--p", p)
    assert code == 2 and "at least 2" in err


def test_p_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("UQTORUS_MAX_P", "2")
    code, _, err = run(capsys, "verify", "--p", "3", "--suite", "field")
    assert code == 2 and "UQTORUS_MAX_P" in err
    monkeypatch.delenv("UQTORUS_MAX_P")
    code, _, _ = run(capsys, "build", "--p", "8")
    assert code == 2


def test_build_summary(capsys):
    code, out, _ = run(capsys, "build", "--p", "3")
    summary = json.loads(out)
    assert code == 0
    assert summary["dim_slf"] == 8 and summary["dim_center"] == 8 and summary["dim_algebra"] == 54
    assert summary["provenance"]["gta_pinning_route"]


def test_verify_ribbon_json(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--suite", "ribbon", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["summary"]["fail"] == 0
    ids = [c["check_id"] for c in report["checks"]]
    assert ids == sorted(ids) and "ribbon/Yang-Baxter" in ids
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_mcg_statuses(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--suite", "mcg", "--json", "--no-timing")
    report = json.loads(out)
    assert code == 0
    checks = {c["check_id"]: c for c in report["checks"]}
    assert checks["mcg/rho_b[chi+_1]"]["status"] == "skipped"
    assert checks["mcg/xi printed closed form"]["status"] == "probe"
    assert checks["mcg/xi printed closed form"]["result"] is False
    assert checks["mcg/braid"]["scalar_values"]["scalar_braid"] == {"coeffs": ["1/1", "0/1", "0/1", "0/1"]}
    cube = checks["mcg/cube"]["scalar_values"]
    assert cube["scalar_cube"] == cube["mu_l(v^-1)/mu_l(v)"]
    assert all(c["wall_time_ms"] == 0 for c in checks.values())


def test_verify_conjecture_is_probe(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--suite", "conjecture", "--json")
    report = json.loads(out)
    assert code == 0
    assert {c["status"] for c in report["checks"]} == {"probe"}
    assert report["summary"]["fail"] == 0


def test_verify_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "--p", "2", "--suite", "integrals", "--json", "--no-timing")
    _, b, _ = run(capsys, "verify", "--p", "2", "--suite", "integrals", "--json", "--no-timing")
    assert a == b


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--suite", "field")
    assert code == 0
    assert out.splitlines()[-1].startswith("pass=")


def test_export_st_matrices(capsys):
    code, out, _ = run(capsys, "export", "st-matrices", "--p", "2")
    obj = json.loads(out)
    assert code == 0
    assert len(obj["rho_a"]) == 5 and all(len(r) == 5 for r in obj["rho_b"])
    assert len(obj["rho_a_complex"][0][0]) == 2


def test_export_text(capsys):
    code, out, _ = run(capsys, "export", "--what", "ribbon", "--p", "2", "--format", "text")
    assert code == 0
    assert "v = " in out and "g = " in out


def test_export_requires_target():
    with pytest.raises(SystemExit) as exc:
        main(["export", "--p", "2"])
    assert exc.value.code == 2


def test_build_export_reverify_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--p", "2", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "manifest.json").exists()
    assert sorted(json.loads(out)["files"]) == sorted(p.name for p in tmp_path.iterdir() if p.name != "manifest.json")
    code, out, _ = run(capsys, "verify", "--from", str(tmp_path), "--json")
    report = json.loads(out)
    assert code == 0
    assert report["summary"] == {"pass": 8, "fail": 0}


def test_reverify_detects_tampering(capsys, tmp_path):
    run(capsys, "build", "--p", "2", "--out", str(tmp_path))
    st = json.loads((tmp_path / "st-matrices.json").read_text())
    st["rho_a"][0][0] = {"coeffs": ["2", "0", "0", "0"]}
    (tmp_path / "st-matrices.json").write_text(json.dumps(st))
    code, out, _ = run(capsys, "verify", "--from", str(tmp_path), "--json")
    assert code == 1
    assert json.loads(out)["summary"]["fail"] >= 1


def test_reverify_missing_artifacts(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--from", str(tmp_path))
    assert code == 2 and "missing" in err


def test_reverify_malformed_artifacts(capsys, tmp_path):
    run(capsys, "build", "--p", "2", "--out", str(tmp_path))
    st = json.loads((tmp_path / "st-matrices.json").read_text())
    st["rho_a"][0][0] = {"coeffs": ["2"]}
    (tmp_path / "st-matrices.json").write_text(json.dumps(st))
    code, _, err = run(capsys, "verify", "--from", str(tmp_path))
    assert code == 2 and "malformed" in err

from __future__ import annotations

import json

import pytest

from lempertkit.cli import main, parse_geodesic, parse_inverse, parse_path, parse_selector, SelectorError
from lempertkit.geodesics import BallFamily, Flat, Royal
from lempertkit.inverses import BidiscFamily, ConstantH, ProductH, PsiOmega, RoyalPhi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_selector_parsing():
    assert parse_selector("family:t=0.5,h=const:0.3") == ("family", {"t": "0.5", "h": "const:0.3"})
    assert parse_inverse("family:t=0.5,h=const:0.3") == BidiscFamily(0.5, ConstantH(0.3))
    assert parse_inverse("family:t=0.2,h=product") == BidiscFamily(0.2, ProductH())
    assert parse_inverse("phi") == RoyalPhi()
    assert parse_inverse("psi:omega=0.5").omega == pytest.approx(-1)
    assert parse_inverse("psi:omega=0.25,r=0.5").omega == pytest.approx(0.5j)
    assert parse_geodesic("royal") == Royal()
    assert parse_geodesic("flat:beta=0.3,beta_im=-0.1") == Flat(0.3 - 0.1j)
    assert parse_geodesic("ball-family:t=2") == BallFamily(2)
    assert parse_path("linear-g2:c=0.25").c == 0.25
    for bad in ("nope", "psi:omega=x", "psi:zeta=1", "family:h=weird"):
        with pytest.raises(SelectorError):
            parse_inverse(bad)


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "--geodesic", "royal", "--inverse", "phi", "--grid", "64")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["schema"] == 1 and doc["command"] == "verify"
    assert doc["reports"][0]["metrics"]["max_residual"] < 1e-12
    assert doc["config"]["seed"] == 42


def test_lempertize_example(capsys):
    code, out, _ = run(capsys, "lempertize", "--geodesic", "diagonal", "--from-inverse",
                       "family:t=0.5,h=const:0.3", "--samples", "1000")
    doc = json.loads(out)
    assert code == 0
    agree = [r for r in doc["reports"] if r["check_name"] == "inverse_agreement"][0]
    assert agree["inputs"]["reference"] == {"kind": "BidiscAffine", "t": 0.5}
    assert agree["metrics"]["max_deviation"] < 1e-8


def test_lempertize_combination(capsys):
    code, out, _ = run(capsys, "lempertize", "--geodesic", "flat", "--from-inverse", "psi:omega=0.5",
                       "--combine-with", "psi:omega=0", "--t", "0.5", "--compare", "psi:omega=0,r=0",
                       "--samples", "200")
    assert code == 0 and json.loads(out)["pass"]


def test_probe_example(capsys):
    code, out, _ = run(capsys, "probe", "--inverse", "psi:omega=0", "--path", "linear-g2:c=0.5", "--len", "12")
    doc = json.loads(out)
    assert code == 0 and abs(doc["reports"][0]["metrics"]["limit_re"]) < 1e-9


def test_check_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--geodesic", "ball-axis", "--inverse", "ball-simple", "--check", "fiber")
    assert code == 1 and json.loads(out)["pass"] is False


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--geodesic", "royal", "--inverse", "bogus")[0] == 2
    for argv in (["frobnicate"], ["verify", "--geodesic", "royal", "--inverse", "phi", "--check", "nope"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    assert run(capsys, "distance", "--domain", "g2", "--w", "0,0,0,0", "--z", "2,0,1,0")[0] == 2
    assert run(capsys, "verify", "--geodesic", "ball-family:t=20", "--inverse", "ball-refined")[0] == 2


def test_numeric_failure_exit_code(capsys):
    # Psi_0 = p pulls back to (0, 1) on the royal geodesic: p - lam^2 has two roots
    code, _, err = run(capsys, "lempertize", "--geodesic", "royal", "--from-inverse", "psi:omega=0,r=0",
                       "--samples", "50")
    assert code == 3 and "MultipleRoots" in err


def test_distance_and_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "distance", "--domain", "g2", "--w", "0,0,0,0", "--z", "0.5,0,0.3,0")
    assert code == 0
    assert json.loads(out)["reports"][0]["metrics"]["caratheodory_star"] == pytest.approx(0.44)
    target = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sample", "--domain", "ball", "--n", "5", "--seed", "7", "--format", "csv",
                     "-o", str(target))
    lines = target.read_text().splitlines()
    assert code == 0 and lines[0] == "domain,re(z1),im(z1),re(z2),im(z2)" and len(lines) == 6


def test_output_dir_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LEMPERTKIT_OUTPUT_DIR", str(tmp_path))
    assert main(["verify", "--geodesic", "royal", "--inverse", "phi", "-o", "r.json"]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["pass"]


def test_csv_report(capsys):
    code, out, _ = run(capsys, "verify", "--geodesic", "royal", "--inverse", "phi", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "re_lambda,im_lambda,residual"


def _strip(text):
    doc = json.loads(text)
    doc.pop("timestamp")
    return json.dumps(doc)


def test_reports_reproducible(capsys):
    a = run(capsys, "suite", "--only", "A9,A15", "--seed", "3")
    b = run(capsys, "suite", "--only", "A9,A15", "--seed", "3")
    assert a[0] == b[0] == 0 and _strip(a[1]) == _strip(b[1])
    assert "A9" in a[2] and "A15" in a[2]


def test_suite_only_tag(capsys):
    code, out, err = run(capsys, "suite", "--only", "fiber")
    doc = json.loads(out)
    assert code == 0 and [c["key"] for c in doc["criteria"]] == ["A3", "A4"]
    assert run(capsys, "suite", "--only", "nothing")[0] == 2

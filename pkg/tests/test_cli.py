import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from bikegeom.cli import run
from bikegeom.curves import ClosedCurve, circle, ellipse
from bikegeom.polygons import Polygon, regular


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_modes(capsys):
    code, cap = out_of(capsys, ["modes", "--n", "4"])
    assert code == 0
    rows = read_csv(cap.out)
    assert abs(float(rows[0]["omega"]) - np.arctan(np.sqrt(5))) < 1e-12
    assert "1.15026199151" in cap.out
    code, cap = out_of(capsys, ["modes", "--n", "3"])
    assert code == 0 and read_csv(cap.out) == []
    code, cap = out_of(capsys, ["modes", "--scan-max", "6"])
    assert {r["n"] for r in read_csv(cap.out)} == {"4", "5", "6"}


def test_modes_needs_an_argument(capsys):
    code, cap = out_of(capsys, ["modes"])
    assert code == 2


def test_polygon_verify_regular(tmp_path, capsys):
    f = tmp_path / "oct.json"
    assert run(["polygon", "make", "--n", "8", "-o", str(f)]) == 0
    code, cap = out_of(capsys, ["polygon", "verify", "-i", str(f), "--k", "3"])
    assert code == 0
    rep = json.loads(cap.out)
    assert rep["side_spread"] < 1e-12 and rep["diag_spread"] < 1e-12 and rep["convex"]


def test_polygon_verify_failure(tmp_path, capsys):
    f = tmp_path / "p.json"
    P = Polygon(regular(8).vertices * [1.3, 1.0])
    f.write_text(P.to_json())
    code, _ = out_of(capsys, ["polygon", "verify", "-i", str(f), "--k", "3"])
    assert code == 1


def test_bicycle_pipeline(tmp_path, capsys):
    front = tmp_path / "front.json"
    front.write_text(json.dumps({"harmonics": {"3": [1.0, 0.0]}}))
    curve = tmp_path / "curve.json"
    svg = tmp_path / "curve.svg"
    assert run(["rho-half", "construct", "-i", str(front), "--L", "4",
                "-o", str(curve), "--svg", str(svg)]) == 0
    assert svg.read_text().startswith("<svg") and 'viewBox="0 0 1000 1000"' in svg.read_text()
    prof = tmp_path / "prof.csv"
    code, cap = out_of(capsys, ["bicycle", "verify", "--rho", "0.5", "-i", str(curve),
                                "--profile", str(prof)])
    assert code == 0
    rep = json.loads(cap.out)
    assert rep["passes"] and rep["length_spread"] < 1e-8
    assert rep["theorems"]["min_six_vertices"]
    rows = read_csv(prof.read_text())
    assert list(rows[0]) == ["x", "c", "alpha_start", "alpha_end"] and len(rows) == 512


def test_bicycle_failure_and_normalization(tmp_path, capsys):
    f = tmp_path / "e.json"
    f.write_text(ellipse().to_json())
    code, cap = out_of(capsys, ["bicycle", "verify", "--rho", "0.3", "-i", str(f)])
    assert code == 1
    rep = json.loads(cap.out)
    assert rep["normalization_factor"] != 1.0 and not rep["passes"]


def test_rho_half_threshold_and_nonconvex(tmp_path, capsys):
    front = tmp_path / "front.json"
    front.write_text(json.dumps({"harmonics": {"3": [1.0, 0.0]}}))
    code, cap = out_of(capsys, ["rho-half", "threshold", "-i", str(front)])
    assert code == 0 and abs(json.loads(cap.out)["min_convex_L"] - 3.0) < 1e-9
    code, cap = out_of(capsys, ["rho-half", "construct", "-i", str(front), "--L", "2",
                                "-o", str(tmp_path / "c.json")])
    assert code == 1 and "not convex" in cap.err
    code, cap = out_of(capsys, ["rho-half", "construct", "-i", str(front)])
    assert code == 2 and "--L" in cap.err


def test_track_commands(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(circle(3.0).to_json())
    code, cap = out_of(capsys, ["track", "front", "-i", str(f), "--L", "1"])
    assert code == 0
    G = ClosedCurve.from_json(cap.out)
    assert np.allclose(np.linalg.norm(G.samples, axis=1), np.sqrt(10), atol=1e-8)
    code, cap = out_of(capsys, ["track", "ambiguous", "-i", str(f), "--L", "1"])
    assert code == 0 and json.loads(cap.out)["ambiguous"]
    e = tmp_path / "e.json"
    e.write_text(ellipse().to_json())
    code, cap = out_of(capsys, ["track", "ambiguous", "-i", str(e), "--L", "1"])
    assert code == 1
    front = tmp_path / "front.json"
    front.write_text(json.dumps({"harmonics": {"3": [1.0, 0.0]}}))
    code, cap = out_of(capsys, ["track", "ambiguous", "-i", str(front), "--L", "4"])
    assert code == 0
    code, cap = out_of(capsys, ["track", "reverse", "-i", str(front), "--L", "4", "--n", "256"])
    assert code == 0 and ClosedCurve.from_json(cap.out).N == 256


def test_deform_circle(tmp_path, capsys):
    cf = tmp_path / "g.json"
    code, cap = out_of(capsys, ["deform-circle", "--n", "4", "--omega", repr(float(np.arctan(np.sqrt(5)))),
                                "--eps", "1e-3", "--curve-out", str(cf)])
    assert code == 0
    rep = json.loads(cap.out)
    assert rep["eq16_residual"] < 1e-9 and rep["chord_spread"] < 1e-5
    assert ClosedCurve.from_json(cf.read_text()).N == 512
    code, cap = out_of(capsys, ["deform-circle", "--n", "4", "--omega", "1", "--eps", "-1"])
    assert code == 2


def test_ode(capsys):
    code, cap = out_of(capsys, ["ode", "--C", "2", "--L", "1", "--beta0", "0.3",
                                "--dbeta0", "0", "--h", "1e-2"])
    assert code == 0
    rows = read_csv(cap.out)
    assert list(rows[0]) == ["x", "beta", "dbeta", "f", "E"]
    E = np.array([float(r["E"]) for r in rows])
    assert np.ptp(E) / abs(E[0]) < 1e-8
    code, cap = out_of(capsys, ["ode", "--C", "2", "--L", "1", "--beta0", "0.3",
                                "--dbeta0", "0", "--h", "0.3"])
    assert code == 1
    code, cap = out_of(capsys, ["ode", "--C", "2", "--L", "-1", "--beta0", "0.3",
                                "--dbeta0", "0"])
    assert code == 2


def test_polygon_subcommands(tmp_path, capsys):
    code, cap = out_of(capsys, ["polygon", "grid"])
    P = Polygon.from_dict(json.loads(cap.out))
    assert P.n == 12
    f = tmp_path / "grid.json"
    f.write_text(cap.out)
    code, cap = out_of(capsys, ["polygon", "verify", "-i", str(f), "--k", "2"])
    assert code == 0 and json.loads(cap.out)["convex"] is False

    code, cap = out_of(capsys, ["polygon", "flex", "--n", "8", "--k", "3", "--h", "0.2"])
    assert code == 0
    fl = tmp_path / "flex.json"
    fl.write_text(cap.out)
    code, cap = out_of(capsys, ["polygon", "petrunin", "-i", str(fl), "--k", "3"])
    arcs = json.loads(cap.out)
    assert code == 0 and len(arcs) == 8 and max(a["chord_spread"] for a in arcs) < 1e-12

    code, cap = out_of(capsys, ["polygon", "flex", "--n", "8", "--k", "3", "--h", "2"])
    assert code == 2 and "convex range" in cap.err

    code, cap = out_of(capsys, ["polygon", "spectrum", "--n", "8", "--k", "3"])
    rows = read_csv(cap.out)
    assert [r["r"] for r in rows if r["zero"] == "True"] == ["0", "4"]

    code, cap = out_of(capsys, ["polygon", "kernel", "--n", "8", "--k", "3"])
    assert json.loads(cap.out)[0]["r"] == 4
    code, cap = out_of(capsys, ["polygon", "kernel", "--n", "7", "--k", "3"])
    assert code == 2

    code, cap = out_of(capsys, ["polygon", "deform", "--n", "8", "--k", "3", "--eps", "0.01"])
    assert code == 0 and Polygon.from_dict(json.loads(cap.out)).n == 8
    code, cap = out_of(capsys, ["polygon", "deform", "--n", "8", "--k", "3",
                                "--mode-index", "3"])
    assert code == 2

    code, cap = out_of(capsys, ["polygon", "search", "--n", "5", "--k", "2", "--seeds", "2",
                                "--seed", "11"])
    assert code == 0 and [r["seed"] for r in read_csv(cap.out)] == ["11", "12"]


def test_invalid_json_names_field(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"sample": [[0, 0]]}))
    code, cap = out_of(capsys, ["render", "-i", str(f)])
    assert code == 2 and "'samples'" in cap.err
    f.write_text(json.dumps({"samples": [[0, 0], [1, 0]]}))
    code, cap = out_of(capsys, ["bicycle", "verify", "--rho", "0.5", "-i", str(f)])
    assert code == 2 and "'samples'" in cap.err
    f.write_text("{not json")
    code, cap = out_of(capsys, ["render", "-i", str(f)])
    assert code == 2 and "not valid JSON" in cap.err
    f.write_text(json.dumps({"harmonics": {"2": [1, 0]}}))
    code, cap = out_of(capsys, ["rho-half", "threshold", "-i", str(f)])
    assert code == 2 and "'harmonics'" in cap.err
    code, cap = out_of(capsys, ["render", "-i", str(tmp_path / "missing.json")])
    assert code == 2


def test_tolerance_env(tmp_path, capsys, monkeypatch):
    f = tmp_path / "p.json"
    P = Polygon(regular(8).vertices + np.random.default_rng(0).normal(0, 1e-7, (8, 2)))
    f.write_text(P.to_json())
    assert run(["polygon", "verify", "-i", str(f), "--k", "3"]) == 1
    monkeypatch.setenv("BIKEGEOM_TOL", "1e-5")
    assert run(["polygon", "verify", "-i", str(f), "--k", "3"]) == 0
    monkeypatch.setenv("BIKEGEOM_TOL", "nope")
    assert run(["polygon", "verify", "-i", str(f), "--k", "3"]) == 2
    capsys.readouterr()


def test_render(tmp_path, capsys):
    for obj in (ellipse().to_json(), regular(6).to_json(),
                json.dumps({"harmonics": {"3": [1.0, 0.0]}})):
        f = tmp_path / "x.json"
        f.write_text(obj)
        code, cap = out_of(capsys, ["render", "-i", str(f), "--mark"])
        assert code == 0 and cap.out.count("<svg") == 1


def test_round_trip_bit_exact(tmp_path, capsys):
    a = tmp_path / "a.json"
    assert run(["polygon", "flex", "--n", "8", "--k", "3", "--h", "0.123", "-o", str(a)]) == 0
    P = Polygon.from_dict(json.loads(a.read_text()))
    assert json.dumps(P.to_dict()) == a.read_text().strip()
    front = tmp_path / "front.json"
    front.write_text(json.dumps({"harmonics": {"3": [1.0, 0.0]}}))
    c1, c2 = tmp_path / "c1.json", tmp_path / "c2.json"
    run(["rho-half", "construct", "-i", str(front), "--L", "4", "-o", str(c1)])
    run(["rho-half", "construct", "-i", str(front), "--L", "4", "-o", str(c2)])
    assert c1.read_text() == c2.read_text()
    G = ClosedCurve.from_json(c1.read_text())
    assert G.to_json() == c1.read_text().strip()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bikegeom", "modes", "--n", "4"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("n,omega,rho")

import cmath
import json
import math

import pytest

import wedgediff as wd

THETA0 = 1.0


def test_version():
    assert wd.__version__ == "0.1.0"


def test_impedance_representations_agree():
    for theta in (0.3, 2.0, 4.2):
        c = wd.impedance_field(0.5 - 0.2j, 0.3, THETA0, 1.0, 2.0, theta, "contour")
        e = wd.impedance_field(0.5 - 0.2j, 0.3, THETA0, 1.0, 2.0, theta, "edge")
        assert abs(c.total - e.total) < 1e-6
        assert c.report.converged
        assert set(c.terms) == {"incident", "reflected1", "reflected2", "surface1", "surface2"}


def test_neumann_limit_of_impedance():
    for theta in (0.4, 1.7, 3.9):
        imp = wd.impedance_field(0.0, 0.0, THETA0, 1.0, 1.5, theta)
        hard = wd.ideal_field("neumann", THETA0, 1.0, 1.5, theta, "edge")
        assert abs(imp.total - hard.total) < 1e-8


def test_soft_wedge_vanishes_on_faces():
    for theta in (0.0, 1.5 * math.pi):
        d = wd.ideal_field("dirichlet", 0.8, 1.0, 2.5, theta, "contour")
        assert abs(d.total) < 1e-9


def test_coefficients():
    value, near = wd.diffraction_coefficient(0.0, 0.0, 2.5, THETA0)
    assert not near
    assert abs(value - wd.ideal_diffraction_coefficient("neumann", 2.5, THETA0)) < 1e-9
    _, near = wd.diffraction_coefficient(0.5, 0.3, math.pi - THETA0 + 0.01, THETA0)
    assert near


def test_kernels():
    eta = [0.0, 0.5, 2.0]
    hard = wd.impedance_kernel(0.0, 0.0, 2.0, THETA0, eta)
    ideal = wd.ideal_kernel("neumann", 1.5 * math.pi, 2.0, THETA0, eta)
    for a, b in zip(hard, ideal):
        assert abs(a - b) < 1e-9 * max(1.0, abs(b))


def test_surface_waves():
    s = wd.surface_waves(-0.8j, 0.1 - 0.7j)
    assert s["face1"] and s["face2"]
    s = wd.surface_waves(0.5, 0.3)
    assert not s["face1"] and not s["face2"]


def test_errors():
    with pytest.raises(ValueError):
        wd.impedance_field(-0.5, 0.3, THETA0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        wd.ideal_field("rubber", THETA0, 1.0, 1.0, 1.0)
    q = wd.QuadratureConfig()
    q.max_nodes = 64
    with pytest.raises(wd.QuadratureFailure) as err:
        wd.impedance_field(0.5 - 0.2j, 0.3, THETA0, 1.0, 3.0, 2.0, "contour", q)
    assert "converged=no" in str(err.value)


def test_cli_in_process(tmp_path):
    cfg = {
        "wedge": "right",
        "boundary": {"kind": "impedance", "mu1": [0.5, -0.2], "mu2": 0.3},
        "incidence": {"theta0": THETA0, "k": 1.0},
        "receivers": {"r": {"min": 1.0, "max": 3.0, "count": 3}, "theta": {"min": 0.2, "max": 4.5, "count": 4}},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "map.csv"
    assert wd.run_cli(["field-map", "--config", str(path), "--representation", "both", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 13
    header = lines[0].split(",")
    col = header.index("abs_total_diff")
    assert max(float(l.split(",")[col]) for l in lines[1:]) < 1e-6
    meta = json.loads((tmp_path / "map.csv.meta.json").read_text())
    assert meta["config_hash"].startswith("fnv1a64:")
    cfg["boundary"]["mu1"] = [-1.0, 0.0]
    path.write_text(json.dumps(cfg))
    assert wd.run_cli(["field-map", "--config", str(path)]) == 2

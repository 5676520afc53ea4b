import json
import math

import pytest

import rslab


@pytest.fixture
def flat():
    return rslab.RotSymSpace(m=2, alpha=1.0, r_max=1000.0)


def test_space_construction(flat):
    assert flat.m == 2
    assert flat.alpha == 1.0
    assert flat.r_max == 1000.0
    hyp = rslab.RotSymSpace(m=3, alpha=0.5, warp="hyperbolic_like", r_max=10.0)
    krad, ktan = rslab.sectional_curvatures(hyp, 1.0)
    assert krad == pytest.approx(-1.0, abs=1e-9)
    assert ktan == pytest.approx(-1.0, abs=1e-9)


def test_profiles():
    w = rslab.make_profile("gaussian_density", [], 10.0)
    assert w.kind == "gaussian_density"
    assert w.value(1.0) == pytest.approx(math.exp(-0.5), rel=1e-14)
    assert w.deriv1(1.0) == pytest.approx(-math.exp(-0.5), rel=1e-12)


def test_volumes_and_distance(flat):
    assert rslab.weighted_ball_volume(flat, 3.0) == pytest.approx(9 * math.pi, rel=1e-10)
    d = rslab.distance(flat, 1.0, 0.0, 2.0, math.pi / 3)
    exact = math.sqrt(1 + 4 - 2 * 2 * math.cos(math.pi / 3))
    assert d == pytest.approx(exact, abs=1e-7)


def test_curvature_scan(flat):
    rep = rslab.cd_scan(flat)
    assert rep["verdict"] == "certified-nonnegative"
    assert abs(rep["min_eig"]) < 1e-14

    gauss = rslab.RotSymSpace(m=2, alpha=1.0, density="gaussian_density",
                              density_params=[], r_max=12.0)
    assert rslab.cd_scan(gauss)["verdict"] == "violated"


def test_comparison_series(flat):
    radii = [1.0, 2.0, 4.0, 8.0]
    series = rslab.bishop_gromov(flat, radii, mode="ball")
    assert series["violation"] is None
    for r, v in zip(radii, series["normalized"]):
        assert v == pytest.approx(math.pi / r, rel=1e-8)
    avr = rslab.avr_estimate(flat)
    assert avr["estimate"] <= 1e-3
    assert avr["settled"]


def test_neumann_and_transport(flat):
    f0 = rslab.make_profile("const", [1.0], 1000.0)
    lam, lhs, rhs = rslab.normalize_f(flat, 1.0, f0)
    assert lam == pytest.approx(4.0 / 9.0, rel=1e-12)
    assert lhs == pytest.approx(rhs, rel=1e-10)

    sol = rslab.solve_neumann_radial(flat, 1.0, f0)
    assert sol.lambda_ == pytest.approx(4.0 / 9.0, rel=1e-12)
    assert sol.u_at(0.6) == pytest.approx(0.18, abs=1e-8)
    defect, _ = rslab.verify_lemma1(flat, sol)
    assert abs(defect) < 1e-8

    audit = rslab.transport_audit(flat, sol, 0.5, 2.0, certify_ar=True)
    assert audit["image"] == pytest.approx(1.5, abs=1e-9)
    assert audit["detJ"] == pytest.approx(9.0, rel=1e-8)
    assert audit["jacobian_bound_ok"]
    assert audit["in_Ar"]


def test_sobolev_report(flat):
    report = json.loads(rslab.sobolev_audit(flat, 1.0, rslab.make_profile("const", [1.0], 1000.0),
                                            [10.0, 1000.0]))
    assert report["hypothesis_certified"]
    assert report["trivial_rhs"]
    assert report["theorem_ok"]
    assert report["limit_ok"]
    assert report["lhs"] == pytest.approx(8 * math.pi / 9, abs=1e-8)
    assert all(link["limit_link_ok"] for link in report["chain"])

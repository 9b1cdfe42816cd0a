import math

import pytest
from scipy.integrate import quad

from geoflow.classify import (
    DIRECTION_NOTE,
    classify_lifetime,
    exact_exponent,
    lifetime_quadrature,
    numeric_exponent,
    ratio_speed,
    sweep_records,
)
from geoflow.errors import ClassificationError, DegenerateSpeedError
from geoflow.radial_flow import FlowProblem, integrate, radial_speed
from geoflow.symfun import HARMONIC, parse_speed
from geoflow.tube import TubeConfig

ALL_CASES = [
    (n, k, m, l) for n in range(1, 7) for k in range(n + 1) for m in range(n + 1) for l in range(n + 1)
]
FINITE_CASES = [c for c in ALL_CASES if exact_exponent(*c) >= 0]


def brute_force_exponent(n, k, m, l):
    # count coth factors in the dominant monomials of S_m and S_l directly
    def dominant(j):
        best = None
        for a in range(0, min(j, n - k) + 1):  # a coth factors, j - a tanh factors
            b = j - a
            if b > k:
                continue
            power = a - b
            best = power if best is None else max(best, power)
        return best

    return dominant(m) - dominant(l)


# ---- exponent table -------------------------------------------------------------

def test_exponent_examples():
    assert exact_exponent(2, 1, 2, 1) == -1
    assert exact_exponent(2, 1, 1, 0) == 1
    for n in range(1, 7):
        assert exact_exponent(n, n, 1, 0) == -1


@pytest.mark.parametrize("n, k, m, l", ALL_CASES[::7])
def test_exponent_matches_monomial_count(n, k, m, l):
    assert exact_exponent(n, k, m, l) == brute_force_exponent(n, k, m, l)


def test_exponent_rule_direction():
    for n, k, m, l in ALL_CASES:
        infinite = exact_exponent(n, k, m, l) <= -1
        assert infinite == (abs(m - (n - k)) > abs(l - (n - k)))


@pytest.mark.parametrize("args", [(2, 3, 1, 0), (2, 1, 3, 0), (2, 1, 0, -1)])
def test_exponent_errors(args):
    with pytest.raises(ClassificationError):
        exact_exponent(*args)


# ---- numeric exponent ----------------------------------------------------------

def test_numeric_exponent_examples():
    assert numeric_exponent(TubeConfig(2, 1), HARMONIC) == pytest.approx(-1.0, abs=0.01)
    assert numeric_exponent(TubeConfig(2, 1), parse_speed("S1")) == pytest.approx(1.0, abs=0.01)
    assert numeric_exponent(TubeConfig(3, 3), HARMONIC) == pytest.approx(-1.0, abs=0.01)


def test_numeric_exponent_rounds_to_table():
    for n, k, m, l in ALL_CASES:
        estimate = numeric_exponent(TubeConfig(n, k), ratio_speed(m, l))
        assert abs(estimate - exact_exponent(n, k, m, l)) < 0.05


def test_numeric_exponent_rejects_nonpositive_speed():
    with pytest.raises(DegenerateSpeedError):
        numeric_exponent(TubeConfig(2, 1), parse_speed("S2 - 2"))


# ---- quadrature route --------------------------------------------------------

def test_quadrature_mean_curvature_torus():
    c = lifetime_quadrature(FlowProblem(TubeConfig(2, 1), 0.5, "S1"))
    assert c.verdict == "finite"
    assert c.T0 == pytest.approx(0.1084452, abs=5e-8)
    assert abs(c.T0 - 0.25 * math.log(math.cosh(1.0))) <= 1e-8


@pytest.mark.parametrize("r0", [0.05, 0.5, 2.0, 10.0])
def test_quadrature_harmonic_torus_infinite(r0):
    c = lifetime_quadrature(FlowProblem(TubeConfig(2, 1), r0))
    assert c.verdict == "infinite" and c.T0 == math.inf
    assert c.exponent_source == "numeric-estimate"


def test_quadrature_sphere():
    c = lifetime_quadrature(FlowProblem(TubeConfig(2, 0), 1.0))
    assert c.verdict == "finite"
    assert c.T0 == pytest.approx(0.8675617, abs=5e-8)


def test_quadrature_matches_scipy_oracle():
    for n, k, m, l in FINITE_CASES[::11]:
        problem = FlowProblem(TubeConfig(n, k), 0.5, ratio_speed(m, l))
        c = lifetime_quadrature(problem)
        oracle, _ = quad(lambda r: 1.0 / radial_speed(problem, r), 0.0, 0.5, epsabs=1e-13, epsrel=1e-12, limit=200)
        assert c.T0 == pytest.approx(oracle, rel=1e-9, abs=1e-11)


def test_quadrature_degenerate_speed():
    with pytest.raises(DegenerateSpeedError):
        lifetime_quadrature(FlowProblem(TubeConfig(2, 1), 1.0, "S1 - 2.5"))


def test_finite_lifetime_grows_with_radius():
    for n, k, m, l in FINITE_CASES[::17]:
        previous = 0.0
        for r0 in (0.1, 0.3, 0.5, 1.0, 2.0):
            T0 = classify_lifetime(n, k, m, l, r0).T0
            assert T0 > previous
            previous = T0


# ---- classifier --------------------------------------------------------------

def test_classify_examples():
    c = classify_lifetime(2, 1, 2, 1, 0.5)
    assert c.verdict == "infinite" and c.exponent == -1 and c.method == "exact-table"
    assert c.agreement["agree"] and c.agreement["quadrature_verdict"] == "infinite"
    for n in range(1, 7):
        assert classify_lifetime(n, n, 0, 1, 0.5).verdict == "finite"
        assert classify_lifetime(n, n, 1, 0, 0.5).verdict == "infinite"
        assert classify_lifetime(n, n - 1, 0, 1, 0.5).verdict == "infinite"


def test_classify_finite_detail():
    c = classify_lifetime(3, 1, 2, 1, 0.5)
    assert c.exponent == 1 and c.verdict == "finite"
    assert c.T0 == pytest.approx(0.2090264, abs=5e-8)
    d = c.to_dict()
    assert d["T0"] == c.T0 and d["agreement"]["agree"] is True


def test_infinite_serialises_as_null():
    assert classify_lifetime(2, 1, 2, 1, 0.5).to_dict()["T0"] is None


def test_exhaustive_agreement():
    records = sweep_records(6, 0.5)
    assert len(records) == len(ALL_CASES) == 783
    assert all(r["agreement"] for r in records)
    for r in records:
        assert (r["verdict"] == "infinite") == (r["exponent"] <= -1)
        if r["verdict"] == "finite":
            assert 0 < r["T0"] < math.inf


def test_sweep_small():
    records = sweep_records(2, 0.5)
    assert len(records) == 35
    torus = next(r for r in records if (r["n"], r["k"], r["m"], r["l"]) == (2, 1, 2, 1))
    assert torus["verdict"] == "infinite"
    with pytest.raises(ClassificationError):
        sweep_records(7, 0.5)


def test_direction_note_names_the_rule():
    assert "|m-(n-k)| > |l-(n-k)|" in DIRECTION_NOTE


@pytest.mark.slow
def test_integrator_extinction_matches_quadrature():
    for n, k, m, l in FINITE_CASES:
        c = classify_lifetime(n, k, m, l, 0.5)
        traj = integrate(FlowProblem(TubeConfig(n, k), 0.5, ratio_speed(m, l)), 1.5 * c.T0 + 1, 10.0)
        assert traj.t_ext is not None
        assert abs(traj.t_ext - c.T0) <= 1e-6

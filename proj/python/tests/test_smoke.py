import math
import os
from fractions import Fraction
from pathlib import Path

import pytest

import gerrycircle as gc

FIXTURES = Path(os.environ.get("GERRYCIRCLE_FIXTURES", Path(__file__).resolve().parents[2] / "data" / "fixtures"))


def load_points(name):
    rows = (FIXTURES / name).read_text().splitlines()[1:]
    return [tuple(float(v) for v in row.split(",")) for row in rows]


def test_exact_matches_enumeration():
    for n in range(1, 6):
        assert gc.prob_d2_exact(n) == gc.enumerate_d_distribution(2, n)[2]
    assert gc.prob_d2_exact(2) == Fraction(1, 16)


def test_gerrymander_and_votes():
    assert gc.optimal_gerrymander(2, 2, [1, 1, -1, -1]) == (1, 0, [1, 0])
    v = gc.generate_votes(2, 5, 3)
    assert v == gc.generate_votes(2, 5, 3)
    assert set(v) <= {1, -1}
    with pytest.raises(ValueError):
        gc.optimal_gerrymander(2, 2, [1, 0, 1, 1])


def test_ivt_and_walk_identity():
    predicted, actual, witness = gc.verify_ivt(2, [1, 1, 1, 1])
    assert predicted and actual and witness == 0
    assert gc.walk_identity_holds(2, [1, -1, -1, 1])


def test_constants():
    assert gc.closed_form_limit() == pytest.approx(1 / (1 + math.exp(math.pi)))
    assert gc.I_term(0) == pytest.approx(math.pi / 4)
    assert gc.J_term(1) == pytest.approx(0.1)
    value, tail = gc.series_I(50)
    assert abs(value - math.pi / 2) <= tail + 1e-12
    routes = gc.limit_d0(series_K=10_000)
    assert routes["max_pairwise_difference"] < 1e-4
    assert routes["prefactor"] == pytest.approx(1 / math.pi)
    assert gc.trivariate_density(-5, 5, 0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-6)


def test_simulation_is_seeded():
    a = gc.estimate_distribution(2, 11, 2000, 5)
    assert a == gc.estimate_distribution(2, 11, 2000, 5, threads=2)
    assert sum(a) == 2000
    freq, se = gc.brownian_event_estimate(1, 20000, 1)
    assert abs(freq - 0.25) < 5 * se


def test_compactness():
    r = gc.compactness([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert r["polsby_popper"] == pytest.approx(math.pi / 4)
    assert r["reock"] == pytest.approx(2 / math.pi)
    assert gc.chord_objective(math.pi / 2) == pytest.approx(math.pi + 2)
    assert 2 * gc.split_inertia(0) == pytest.approx(math.pi / 2 - 16 / (9 * math.pi))
    assert all(passed for _, passed, _, _ in gc.verify_geometry(1024))


def test_splitline():
    pts = load_points("near_even_clusters.csv")
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    plan = gc.splitline(pts, square, k=4, seed=2)
    assert len(plan["assignments"]) == len(pts)
    assert plan["max_imbalance"] <= 0.005
    assert plan == gc.splitline(pts, square, k=4, seed=2)

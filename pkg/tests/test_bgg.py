"""Linear complexes, fiber evaluation and faithfulness scans."""

import random

import pytest

from bggbundles import (GF, QQ, DenseMatrix, GradedEModule, LinearComplex,
                        MatrixOfLinearForms, PointBudgetError, Subspace,
                        bgg_complex, bundle_rank, evaluate_fiber, exact_at_point,
                        faithfulness_scan, free_truncated, projective_point_count,
                        quotient_top)

F = GF(32003)


def test_bgg_complex_terms():
    P = free_truncated(2, 2, 3, F)
    C = bgg_complex(P)
    assert C.terms == ((0, 2), (1, 8), (2, 12))
    assert C.length == 2
    C.validate()


def test_evaluate_fiber_matches_hand_value():
    P = free_truncated(1, 1, 2, QQ)
    C = bgg_complex(P)
    fib = evaluate_fiber(C.diffs[0], (1, 1, 0))
    assert fib.to_lists() == [[1], [1], [0]]


def test_evaluate_fiber_linearity():
    rng = random.Random(1)
    P = free_truncated(1, 2, 3, F)
    C = bgg_complex(P)
    v = [F.random_element(rng) for _ in range(4)]
    w = [F.random_element(rng) for _ in range(4)]
    s = [(a + b) % F.p for a, b in zip(v, w)]
    d = C.diffs[1]
    assert evaluate_fiber(d, v) + evaluate_fiber(d, w) == evaluate_fiber(d, s)


def test_evaluate_fiber_rejects_zero():
    P = free_truncated(1, 1, 2, QQ)
    C = bgg_complex(P)
    with pytest.raises(ValueError):
        evaluate_fiber(C.diffs[0], (0, 0, 0))


def test_free_module_exact_everywhere():
    P = free_truncated(2, 2, 3, F)
    C = bgg_complex(P)
    rng = random.Random(3)
    for _ in range(50):
        v = [F.random_element(rng) for _ in range(4)]
        if any(v):
            assert exact_at_point(C, v)


def test_deliberate_counterexample_fails_at_a_point():
    # Kill the e_0 direction of P_1 (a quotient at degree 1, not the top):
    # at the point e_0 the fiber map P_0 -> P_1 becomes zero, breaking
    # exactness at degree 0.
    P = free_truncated(1, 1, 3, F)
    L = Subspace(DenseMatrix(F, [[1, 0, 0, 0]], 4))
    Q = quotient_top(P, L)
    C = bgg_complex(Q)
    assert not exact_at_point(C, (1, 0, 0, 0))
    assert exact_at_point(C, (0, 1, 0, 0))


def test_projective_point_counts():
    assert projective_point_count(5, 3) == 156
    assert projective_point_count(101, 3) == 1040604
    assert projective_point_count(7, 4) == 2801


def test_exhaustive_scan_free_small_fields():
    for q in (2, 3):
        for n in (2, 3):
            for l in range(1, n):
                P = free_truncated(1, l, n, GF(q))
                rep = faithfulness_scan(bgg_complex(P), "exhaustive")
                assert rep.ok
                assert rep.points_checked == projective_point_count(q, n)


def test_exhaustive_scan_finds_failures():
    P = free_truncated(1, 1, 3, GF(5))
    L = Subspace(DenseMatrix(GF(5), [[1, 0, 0, 0]], 4))
    C = bgg_complex(quotient_top(P, L))
    rep = faithfulness_scan(C, "exhaustive")
    assert not rep.ok
    # Exactly the point [1:0:0:0], at degree 0.
    assert len(rep.failures) == 1
    idx, point, degree = rep.failures[0]
    assert point == (1, 0, 0, 0) and degree == 0


def test_exhaustive_scan_budget():
    P = free_truncated(1, 1, 3, GF(101))
    with pytest.raises(PointBudgetError):
        faithfulness_scan(bgg_complex(P), "exhaustive", point_budget=1000)


def test_exhaustive_scan_requires_prime_field():
    P = free_truncated(1, 1, 3, QQ)
    with pytest.raises(ValueError):
        faithfulness_scan(bgg_complex(P), "exhaustive")


def test_random_scan_prime_field():
    P = free_truncated(2, 2, 3, F)
    rep = faithfulness_scan(bgg_complex(P), "random", samples=500, seed=5)
    assert rep.ok and rep.points_checked == 500 and rep.seed == 5


def test_random_scan_deterministic():
    P = free_truncated(1, 1, 3, GF(5))
    L = Subspace(DenseMatrix(GF(5), [[1, 0, 0, 0]], 4))
    C = bgg_complex(quotient_top(P, L))
    # 156 distinct points exhaust P^3(F_5), so the bad point is surely hit.
    r1 = faithfulness_scan(C, "random", samples=156, seed=9)
    r2 = faithfulness_scan(C, "random", samples=156, seed=9)
    assert r1.failures == r2.failures and not r1.ok


def test_random_scan_rational():
    P = free_truncated(1, 2, 3, QQ)
    rep = faithfulness_scan(bgg_complex(P), "random", samples=50, seed=2)
    assert rep.ok and rep.points_checked == 50


def test_composite_zero_on_validate():
    P = free_truncated(1, 2, 3, F)
    C = bgg_complex(P)
    C.validate()
    # Swapping one slice breaks the quadratic-form identity.
    bad_d1 = MatrixOfLinearForms((C.diffs[1].slices[1],) + C.diffs[1].slices[1:])
    broken = LinearComplex(C.n, C.terms, (C.diffs[0], bad_d1))
    from bggbundles import ShapeError
    with pytest.raises(ShapeError):
        broken.validate()


def test_bundle_rank():
    P = free_truncated(2, 2, 3, F)
    assert bundle_rank(P) == 6
    rng = random.Random(0)
    rows = [[F.random_element(rng) for _ in range(12)]]
    Q = quotient_top(P, Subspace(DenseMatrix(F, rows, 12)))
    assert bundle_rank(Q) == 5

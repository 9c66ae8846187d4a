import random
from fractions import Fraction

import pytest

from wittenform.errors import DimensionMismatch, TruncationError
from wittenform.lattice import IntersectionForm, diagonal_form, hyperbolic_plane
from wittenform.series import (FormalSeries, HomogeneousPolynomial,
                               exp_linear, exp_quadratic, first_difference,
                               linear_series, quadratic_series)
from wittenform.synthetic import random_unimodular_form

H = hyperbolic_plane()
TWO = IntersectionForm([[2]], require_unimodular=False)


def S(num_vars, cap, terms):
    return FormalSeries(num_vars, cap, {k: Fraction(v) for k, v in terms.items()})


def random_series(rng, num_vars, cap, nterms=5):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, 2) for _ in range(num_vars))
        terms[exps] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return FormalSeries(num_vars, cap, terms)


def naive_mul(a, b):
    # independent Cauchy product with truncation, straight off the definition
    cap = min(a.degree_cap, b.degree_cap)
    out = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            if sum(key) < cap:
                out[key] = out.get(key, Fraction(0)) + ca * cb
    return FormalSeries(a.num_vars, cap, out)


# ---------------------------------------------------------------------------
# ring basics

def test_add_examples():
    one = FormalSeries.one(1, 5)
    zero = FormalSeries.zero(1, 5)
    assert one + zero == one
    a = S(1, 5, {(0,): 1, (1,): 1})
    b = S(1, 5, {(0,): 1, (1,): -1})
    assert a + b == S(1, 5, {(0,): 2})


def test_add_cap_is_min():
    a = FormalSeries.one(2, 4)
    b = FormalSeries.one(2, 6)
    assert (a + b).degree_cap == 4
    assert (a * b).degree_cap == 4


def test_add_variable_mismatch():
    with pytest.raises(DimensionMismatch):
        FormalSeries.one(2, 4) + FormalSeries.one(3, 4)


def test_mul_examples():
    a = S(1, 3, {(0,): 1, (1,): 1})
    b = S(1, 3, {(0,): 1, (1,): -1})
    assert a * b == S(1, 3, {(0,): 1, (2,): -1})
    assert (a * FormalSeries.zero(1, 3)).is_zero()


def test_mul_matches_naive_oracle():
    rng = random.Random(21)
    for _ in range(30):
        n = rng.randint(1, 3)
        cap = rng.randint(1, 7)
        a = random_series(rng, n, cap)
        b = random_series(rng, n, cap)
        assert a * b == naive_mul(a, b)


def test_scalar_multiplication():
    a = S(2, 4, {(1, 0): 3, (0, 2): -2})
    assert a * 0 == FormalSeries.zero(2, 4)
    assert a * Fraction(1, 3) == S(2, 4, {(1, 0): 1, (0, 2): Fraction(-2, 3)})
    assert 2 * a == a + a


def test_ring_axioms_randomized():
    rng = random.Random(22)
    for _ in range(20):
        n = rng.randint(1, 3)
        cap = rng.randint(1, 8)
        a = random_series(rng, n, cap, 4)
        b = random_series(rng, n, cap, 4)
        c = random_series(rng, n, cap, 4)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


# ---------------------------------------------------------------------------
# truncation semantics

def test_congruence_convention():
    a = S(1, 5, {(0,): 1, (3,): 1})
    one = FormalSeries.one(1, 5)
    assert a.congruent_mod_degree(one, 3)
    assert not a.congruent_mod_degree(one, 4)
    assert a.congruent_mod_degree(a, 5)


def test_congruence_beyond_cap_refused():
    a = FormalSeries.one(1, 4)
    with pytest.raises(TruncationError):
        a.congruent_mod_degree(FormalSeries.one(1, 6), 5)


def test_coefficient_access():
    eq = exp_quadratic(TWO, 4)
    assert eq.coefficient((0,)) == 1
    assert eq.coefficient((2,)) == 1
    assert FormalSeries.zero(1, 4).coefficient((1,)) == 0
    with pytest.raises(TruncationError):
        eq.coefficient((4,))


def test_truncate_and_homogeneous_part():
    eq = exp_quadratic(TWO, 6)   # 1 + h^2 + h^4/2
    assert eq.truncate_to(3) == S(1, 3, {(0,): 1, (2,): 1})
    with pytest.raises(TruncationError):
        eq.truncate_to(7)
    part0 = eq.homogeneous_part(0)
    assert part0.degree == 0
    assert part0 == S(1, 6, {(0,): 1})
    part2 = eq.homogeneous_part(2)
    assert part2 == S(1, 6, {(2,): 1})
    with pytest.raises(TruncationError):
        eq.homogeneous_part(6)


def test_truncate_idempotent():
    rng = random.Random(23)
    for _ in range(10):
        a = random_series(rng, 2, 6)
        n = rng.randint(0, 6)
        assert a.truncate_to(n).truncate_to(n) == a.truncate_to(n)


def test_homogeneous_polynomial_rejects_mixed_degrees():
    with pytest.raises(ValueError):
        HomogeneousPolynomial(1, 5, {(1,): Fraction(1), (2,): Fraction(1)},
                              degree=1)


# ---------------------------------------------------------------------------
# exponential generators

def test_exp_linear_of_zero_class():
    assert exp_linear(H, (0, 0), 6) == FormalSeries.one(2, 6)


def test_exp_linear_rank_one_hand_expansion():
    # <K,h> = 2h, so mod degree 3: 1 + 2h + 2h^2
    got = exp_linear(TWO, (1,), 3)
    assert got == S(1, 3, {(0,): 1, (1,): 2, (2,): 2})


def test_exp_linear_dualizes_through_form():
    # in H the class (1,0) pairs as x -> x_2
    assert linear_series(H, (1, 0), 3) == S(2, 3, {(0, 1): 1})


def test_exp_quadratic_rank_one():
    assert exp_quadratic(TWO, 4) == S(1, 4, {(0,): 1, (2,): 1})


def test_exp_quadratic_of_zero_form():
    zero_form = IntersectionForm([[0]], require_unimodular=False)
    assert exp_quadratic(zero_form, 5) == FormalSeries.one(1, 5)


def test_exp_quadratic_inverse_identity():
    rng = random.Random(24)
    for _ in range(10):
        n = rng.randint(1, 3)
        form = random_unimodular_form(rng, n)
        neg = IntersectionForm([[-x for x in row] for row in form.gram])
        for cap in (4, 8, 12):
            assert (exp_quadratic(form, cap) * exp_quadratic(neg, cap)
                    == FormalSeries.one(n, cap))


def test_exp_linear_additivity():
    rng = random.Random(25)
    for _ in range(15):
        n = rng.randint(1, 3)
        form = random_unimodular_form(rng, n)
        k1 = tuple(rng.randint(-3, 3) for _ in range(n))
        k2 = tuple(rng.randint(-3, 3) for _ in range(n))
        ksum = tuple(a + b for a, b in zip(k1, k2))
        cap = rng.choice((4, 8, 12))
        assert (exp_linear(form, k1, cap) * exp_linear(form, k2, cap)
                == exp_linear(form, ksum, cap))


def test_exp_linear_inverse_at_rank_two():
    k = (2, -1)
    prod = exp_linear(H, k, 6) * exp_linear(H, tuple(-x for x in k), 6)
    assert prod == FormalSeries.one(2, 6)


def test_exp_linear_derivative_identity():
    # d/dh_j exp<K,h> = kappa_j exp<K,h> mod degree N-1
    form = H
    k = (1, -2)
    dual = form.dual_coefficients(k)
    e = exp_linear(form, k, 7)
    for j in range(2):
        lhs = e.derivative(j)
        rhs = (e * Fraction(dual[j])).truncate_to(6)
        assert lhs == rhs


def test_exp_quadratic_gradient_identity():
    rng = random.Random(26)
    for _ in range(8):
        n = rng.randint(1, 3)
        form = random_unimodular_form(rng, n)
        cap = 8
        eq = exp_quadratic(form, cap)
        for j in range(n):
            basis_j = tuple(1 if i == j else 0 for i in range(n))
            grad = linear_series(form, basis_j, cap)
            assert eq.derivative(j) == (grad * eq).truncate_to(cap - 1)


def test_quadratic_series_is_plain_q():
    q = quadratic_series(H, 4)
    assert q == S(2, 4, {(1, 1): 2})


# ---------------------------------------------------------------------------
# canonical text

def test_golden_text_hyperbolic_exponential():
    assert exp_quadratic(H, 4).to_text() == (
        "series vars=2 cap=4\n"
        "1\n"
        "1 * h1^1 h2^1")


def test_zero_series_text():
    z = FormalSeries.zero(2, 3)
    assert z.to_text() == "series vars=2 cap=3\n0"
    assert FormalSeries.parse(z.to_text()) == z


def test_terms_sorted_by_degree_then_lex():
    s = S(2, 5, {(2, 0): 1, (0, 2): 2, (1, 1): 3, (0, 0): 4, (1, 0): 5})
    lines = s.to_text().splitlines()[1:]
    assert lines == ["4", "5 * h1^1", "2 * h2^2", "3 * h1^1 h2^1", "1 * h1^2"]


def test_parse_roundtrip_random():
    rng = random.Random(27)
    for _ in range(25):
        s = random_series(rng, rng.randint(1, 3), rng.randint(1, 7))
        assert FormalSeries.parse(s.to_text()) == s


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        FormalSeries.parse("not a series")
    with pytest.raises(ValueError):
        FormalSeries.parse("series vars=1 cap=3\n1 * x^2")


def test_first_difference_reports_smallest_monomial():
    a = S(2, 6, {(0, 0): 1, (1, 1): 2, (3, 0): 5})
    b = S(2, 6, {(0, 0): 1, (1, 1): 3, (2, 0): 7})
    exps, ca, cb = first_difference(a, b, 6)
    assert exps == (1, 1) and ca == 2 and cb == 3
    # below the differing degree they are congruent
    assert first_difference(a, b, 2) is None
    # and the lex rule breaks ties inside one degree
    c = S(2, 6, {(1, 1): 2, (2, 0): 9, (3, 0): 5})
    exps, ca, cb = first_difference(a, c, 6)
    assert exps == (0, 0) and ca == 1 and cb == 0

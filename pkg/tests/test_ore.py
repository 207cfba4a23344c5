"""Ore operators: products, translation, unrolling, guessing, reduction."""

import random
from fractions import Fraction

import pytest

from rookpaths import rookdata
from rookpaths.exactmath import MPoly, PowerSeries, RatFun, poly, ratfun
from rookpaths.ore import (DiffOp, InsufficientTermsError, RecOp, SingularRecurrenceError,
                           apply_diffop, diffop_to_rec, guess_rec, op_multiply,
                           prove_rec_reduction, rec_unroll)
from rookpaths.walks import ROOK, SeqTable, diagonal_sequence

X = ("x",)
N = ("n",)


def rand_diffop(rng, max_order=2, max_deg=2):
    terms = {}
    for k in range(rng.randrange(1, max_order + 2)):
        p = {(e,): rng.randrange(-4, 5) for e in range(max_deg + 1)}
        mp = MPoly(X, p)
        if not mp.is_zero():
            terms[(k,)] = RatFun(mp)
    return DiffOp(X, X, terms) if terms else DiffOp.identity(X, X)


def rand_recop(rng, max_order=2, max_deg=2):
    terms = {}
    for j in range(rng.randrange(1, max_order + 2)):
        p = {(e,): rng.randrange(-4, 5) for e in range(max_deg + 1)}
        mp = MPoly(N, p)
        if not mp.is_zero():
            terms[j] = mp
    return RecOp(terms) if terms else RecOp({0: 1})


# -- products -------------------------------------------------------------------


def test_dx_times_x_is_leibniz():
    dx = DiffOp.partial(X, X, "x")
    xop = DiffOp(X, X, {(0,): poly("x", X)})
    prod = op_multiply(dx, xop)
    assert prod.coeff((0,)) == ratfun("1", X)
    assert prod.coeff((1,)) == ratfun("x", X)


def test_shift_times_n():
    sigma = RecOp({-1: 1})  # forward shift
    n_mult = RecOp({0: poly("n", N)})
    prod = op_multiply(sigma, n_mult)
    assert prod.terms == {-1: poly("n+1", N)}


def test_operator_product_associativity():
    rng = random.Random(31)
    for _ in range(8):
        a, b, c = (rand_diffop(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
    for _ in range(8):
        a, b, c = (rand_recop(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


# -- application ------------------------------------------------------------------


def test_apply_derivative_to_geometric():
    dx = DiffOp.partial(X, X, "x")
    assert apply_diffop(dx, ratfun("1/(1-x)", X)) == ratfun("1/((1-x)^2)", X)


def test_stage_a_identity_on_f(rook_f, stage_a_certs):
    p1 = stage_a_certs[0]
    lhs = p1.operator.apply_ratfun(rook_f)
    rhs = (p1.phi * rook_f).derivative("t")
    assert (lhs - rhs).is_zero()


def test_telescoper_annihilates_series(dp40):
    op = rookdata.operator_p2_dx()
    series = PowerSeries("x", [Fraction(t) for t in dp40.terms])
    result = apply_diffop(op, series)
    assert result.is_zero()


# -- ODE <-> recurrence --------------------------------------------------------------


def test_translate_exponential():
    em = DiffOp(X, X, {(1,): poly("1", X), (0,): poly("-1", X)})
    rec = diffop_to_rec(em)
    assert rec == RecOp({0: poly("n", N), 1: -1})


def test_translate_euler_operator():
    eu = DiffOp(X, X, {(1,): poly("x", X)})
    assert diffop_to_rec(eu) == RecOp({0: poly("n", N)})


def test_translate_telescoper_gives_order4_recurrence():
    rec = diffop_to_rec(rookdata.operator_p2_dx())
    assert rec == rookdata.recurrence_order4().normalized()


def test_translate_apply_consistency():
    # Unrolling the translated recurrence produces a series the ODE kills,
    # and perturbing one term breaks it.
    rng = random.Random(32)
    produced = 0
    while produced < 6:
        op = rand_diffop(rng)
        if op.order() == 0:
            continue
        rec = diffop_to_rec(op)
        values = _padded_solution(rec, rng, 25)
        if values is None or all(v == 0 for v in values):
            continue
        series = PowerSeries("x", values)
        assert apply_diffop(op, series).is_zero()
        bumped_vals = list(values)
        bumped_vals[12] += 1
        assert not apply_diffop(op, PowerSeries("x", bumped_vals)).is_zero()
        produced += 1


def _padded_solution(rec, rng, length):
    """Coefficient sequence satisfying the recurrence for every n >= 0."""
    q0 = rec.coeff(0)
    values = []
    for n in range(length):
        rhs = Fraction(0)
        for j, q in rec.terms.items():
            if j and n - j >= 0:
                rhs += q.eval_full({"n": n}) * values[n - j]
        lead = q0.eval_full({"n": n})
        if lead != 0:
            values.append(-rhs / lead)
        elif rhs == 0:
            values.append(Fraction(rng.randrange(-5, 6)))
        else:
            return None
    return values


def test_rec_unroll_short_recurrence():
    seq = rec_unroll(rookdata.recurrence_order3(), SeqTable("rook", [1, 6, 222], "dp"), 8)
    assert seq.terms == [1, 6, 222, 9918, 486924, 25267236, 1359631776, 75059524392,
                         4223303759148]
    assert seq.provenance == "recurrence"


def test_rec_unroll_order4_matches_dp(dp40):
    seq = rec_unroll(rookdata.recurrence_order4(), SeqTable("rook", dp40.terms[:4], "dp"), 40)
    assert seq.terms == dp40.terms


def test_rec_unroll_reports_singular_index():
    # leading coefficient n-2 vanishes at the first unrolled index
    rec = RecOp({0: poly("n-2", N), 1: 1})
    with pytest.raises(SingularRecurrenceError) as err:
        rec_unroll(rec, SeqTable("t", [1, 1], "dp"), 6)
    assert err.value.index == 2


# -- guessing ----------------------------------------------------------------------


def test_guess_recovers_short_recurrence(dp40):
    found = guess_rec(SeqTable("rook", dp40.terms[:25], "dp"), 3, 4)
    assert len(found) == 1
    assert found[0] == rookdata.recurrence_order3().normalized()


def test_guess_geometric():
    seq = SeqTable("geom", [2 ** n for n in range(10)], "dp")
    found = guess_rec(seq, 1, 0)
    assert found == [RecOp({0: 1, 1: -2})]


def test_guess_no_second_order_recurrence(dp40):
    assert guess_rec(SeqTable("rook", dp40.terms[:20], "dp"), 2, 6) == []


def test_guess_insufficient_terms():
    with pytest.raises(InsufficientTermsError):
        guess_rec(SeqTable("short", [1, 2, 3], "dp"), 3, 2)


def test_guess_validates_beyond_window(dp40):
    found = guess_rec(SeqTable("rook", dp40.terms[:25], "dp"), 3, 4)
    seq = rec_unroll(found[0], SeqTable("rook", dp40.terms[:3], "dp"), 40)
    assert seq.terms[26:] == dp40.terms[26:]


# -- order reduction proof -----------------------------------------------------------


def test_reduction_proof_passes():
    report = prove_rec_reduction(rookdata.recurrence_order4(), rookdata.recurrence_order3(),
                                 rookdata.reduction_multiplier(), rookdata.reduction_cofactor())
    assert report.passed
    assert report.residual.is_zero()
    assert set(report.base_cases) == set(range(3, 11))
    assert all(v == 0 for v in report.base_cases.values())


def test_reduction_proof_identity_case():
    rec = rookdata.recurrence_order3()
    report = prove_rec_reduction(rec, rec, poly("1", N), RecOp({0: 1}))
    assert report.passed


def test_reduction_proof_detects_perturbation():
    bad_terms = dict(rookdata.recurrence_order3().terms)
    bad_terms[1] = bad_terms[1] + 1
    report = prove_rec_reduction(rookdata.recurrence_order4(), RecOp(bad_terms),
                                 rookdata.reduction_multiplier(), rookdata.reduction_cofactor())
    assert not report.passed
    assert not report.residual.is_zero()


# -- serialization ----------------------------------------------------------------


def test_operator_json_round_trip():
    op = rookdata.operator_p2()
    again = DiffOp.from_json_dict(op.to_json_dict())
    assert again == op
    rec = rookdata.recurrence_order3()
    again_rec = RecOp.from_json_dict(rec.to_json_dict())
    assert again_rec == rec


def test_apply_series_with_rational_coefficients():
    # (1/(1-x)) d/dx applied to exp-like series equals series/(1-x) term checks
    op = DiffOp(X, X, {(1,): ratfun("1/(1-x)", X)})
    geom = PowerSeries.from_ratfun(ratfun("1/(1-x)", X), "x", 12)
    got = apply_diffop(op, geom)
    expected = PowerSeries.from_ratfun(ratfun("1/((1-x)^3)", X), "x", 11)
    assert got == expected
    pole = DiffOp(X, X, {(1,): ratfun("1/x", X)})
    with pytest.raises(ValueError):
        apply_diffop(pole, geom)


def test_recorded_base_combination_is_zero():
    assert rookdata.reduction_base_combination() == 0

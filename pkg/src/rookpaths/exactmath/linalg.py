"""Exact linear algebra over polynomial fraction fields.

The solver is fraction-free: rows are cleared to polynomial entries, and
elimination uses cross-multiplication followed by a full content strip of
every updated row (rational content and polynomial gcd across the row).  By
Sylvester's identity the stripped content always contains the Bareiss pivot
factor, so growth is no worse than classical fraction-free elimination while
the representation never leaves the polynomial ring.

Kernel vectors are canonical: for each free column the unique solution with
that coordinate 1 and the other free coordinates 0, cleared to polynomials
of content 1 with the first nonzero coordinate's leading coefficient positive.
Pivot-row selection therefore affects speed only, never the output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .mpoly import MPoly, mpoly_gcd, mpoly_lcm
from .ratfun import RatFun


class ExactMatrix:
    """Rectangular matrix of RatFun entries over a shared variable tuple."""

    __slots__ = ("vars", "rows")

    def __init__(self, rows: Sequence[Sequence[RatFun | MPoly]], vars: tuple[str, ...] | None = None):
        conv: list[list[RatFun]] = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, MPoly):
                    e = RatFun(e)
                elif isinstance(e, (int, Fraction)):
                    if vars is None:
                        raise ValueError("scalar entries need an explicit vars tuple")
                    e = RatFun.from_scalar(e, vars)
                out.append(e)
            conv.append(out)
        if not conv or not conv[0]:
            raise ValueError("matrix must be nonempty")
        self.vars = vars if vars is not None else conv[0][0].vars
        ncols = len(conv[0])
        for row in conv:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.vars != self.vars:
                    raise ValueError("mixed variable tuples in matrix")
        self.rows = conv

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))


def linear_nullspace(m: ExactMatrix | Sequence[Sequence[RatFun]]) -> list[list[MPoly]]:
    """Basis of the right kernel, cleared to content-1 polynomial vectors."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    vars = m.vars
    ncols = m.shape[1]

    rows: list[dict[int, MPoly]] = []
    for row in m.rows:
        cleared = _clear_row(row, vars)
        if cleared:
            rows.append(cleared)

    pivots: list[tuple[int, dict[int, MPoly]]] = []
    for col in range(ncols):
        pivot = None
        best = None
        for r in rows:
            e = r.get(col)
            if e is None:
                continue
            score = (len(e.terms), e.total_degree(), min(r.keys()), len(r))
            if best is None or score < best:
                best = score
                pivot = r
        if pivot is None:
            continue
        rows.remove(pivot)
        pe = pivot[col]
        new_rows = []
        for r in rows:
            e = r.pop(col, None)
            if e is None:
                new_rows.append(r)
                continue
            g = mpoly_gcd(pe, e)
            f_keep = pe.divide_exact(g)
            f_sub = e.divide_exact(g)
            updated: dict[int, MPoly] = {}
            for j in set(r) | set(pivot):
                if j == col:
                    continue
                a = r.get(j)
                b = pivot.get(j)
                if a is None:
                    val = -(f_sub * b)
                elif b is None:
                    val = f_keep * a
                else:
                    val = f_keep * a - f_sub * b
                if not val.is_zero():
                    updated[j] = val
            if updated:
                new_rows.append(_strip_content(updated))
        rows = new_rows
        pivots.append((col, pivot))

    pivot_cols = {c for c, _ in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    basis: list[list[MPoly]] = []
    one = RatFun.from_scalar(1, vars)
    zero = RatFun.from_scalar(0, vars)
    for f in free_cols:
        v: dict[int, RatFun] = {f: one}
        for col, prow in reversed(pivots):
            acc = zero
            for j, e in prow.items():
                if j != col and j in v:
                    acc = acc + RatFun(e) * v[j]
            if not acc.is_zero():
                v[col] = -acc / RatFun(prow[col])
        basis.append(_clear_vector(v, ncols, vars))
    return basis


def _clear_row(row: Sequence[RatFun], vars: tuple[str, ...]) -> dict[int, MPoly]:
    """Multiply a RatFun row by the lcm of denominators; strip content."""
    dens = [e.den for e in row if not e.is_zero()]
    if not dens:
        return {}
    common = dens[0]
    for d in dens[1:]:
        common = mpoly_lcm(common, d)
    out: dict[int, MPoly] = {}
    for j, e in enumerate(row):
        if not e.is_zero():
            out[j] = e.num * common.divide_exact(e.den)
    return _strip_content(out)


def _strip_content(row: dict[int, MPoly]) -> dict[int, MPoly]:
    if not row:
        return row
    entries = list(row.values())
    g = entries[0]
    for e in entries[1:]:
        if g.is_constant():
            break
        g = mpoly_gcd(g, e)
    if g.is_constant():
        c = Fraction(0)
        for e in entries:
            c = _frac_gcd(c, e.rational_content())
            if c == 1:
                break
        if c == 1:
            return row
        inv = 1 / c
        return {j: e * inv for j, e in row.items()}
    g = g.primitive_part()
    stripped = {j: e.divide_exact(g) for j, e in row.items()}
    return _strip_content(stripped)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    from math import gcd
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    g = gcd(a.denominator, b.denominator)
    return Fraction(gcd(a.numerator * (b.denominator // g), b.numerator * (a.denominator // g)),
                    (a.denominator * b.denominator) // g)


def _clear_vector(v: dict[int, RatFun], ncols: int, vars: tuple[str, ...]) -> list[MPoly]:
    dens = [e.den for e in v.values() if not e.is_zero()]
    common = MPoly.const(vars, 1)
    for d in dens:
        common = mpoly_lcm(common, d)
    out = [MPoly.zero(vars)] * ncols
    for j, e in v.items():
        if not e.is_zero():
            out[j] = e.num * common.divide_exact(e.den)
    cleared = _strip_content({j: p for j, p in enumerate(out) if not p.is_zero()})
    result = [MPoly.zero(vars)] * ncols
    for j, p in cleared.items():
        result[j] = p
    for p in result:
        if not p.is_zero():
            if p.leading_coeff() < 0:
                result = [-q for q in result]
            break
    return result

"""Exact-rational numerics: constants, bisection, series extrapolation.

Everything here computes with Fractions until the final decimal rendering,
so results are reproducible bit for bit.  The constants pi and sqrt(3) are
delivered as rational enclosures good to a requested number of digits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence


def decimal_str(value: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering, truncated (not rounded)."""
    sign = "-" if value < 0 else ""
    value = abs(value)
    whole = value.numerator // value.denominator
    rem = value - whole
    scaled = (rem.numerator * 10 ** digits) // rem.denominator
    return f"{sign}{whole}.{scaled:0{digits}d}" if digits else f"{sign}{whole}"


def bisect_root(fn: Callable[[Fraction], Fraction], lo: Fraction, hi: Fraction,
                eps: Fraction) -> Fraction:
    """Bisection on an exact sign change; returns a point within eps of a root."""
    flo = fn(lo)
    if flo == 0:
        return lo
    fhi = fn(hi)
    if fhi == 0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise ArithmeticError("no sign change in the bracket")
    while hi - lo > eps:
        mid = (lo + hi) / 2
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def sqrt_rational(value: Fraction, digits: int = 30) -> Fraction:
    """Newton iteration for sqrt(value) to the requested decimal accuracy."""
    if value < 0:
        raise ValueError("negative radicand")
    if value == 0:
        return Fraction(0)
    eps = Fraction(1, 10 ** (digits + 2))
    x = Fraction(max(1, value.numerator // max(1, value.denominator)))
    for _ in range(200):
        nxt = (x + value / x) / 2
        if abs(nxt - x) < eps:
            x = nxt
            break
        x = nxt
    # Trim the representation so downstream arithmetic stays cheap.
    scale = 10 ** (digits + 4)
    return Fraction(int(x * scale), scale)


def pi_rational(digits: int = 30) -> Fraction:
    """Machin's formula with exact arctan series, to the requested accuracy."""

    def arctan_inv(k: int, terms: int) -> Fraction:
        acc = Fraction(0)
        power = Fraction(1, k)
        k2 = k * k
        for m in range(terms):
            term = power / (2 * m + 1)
            acc += term if m % 2 == 0 else -term
            power /= k2
        return acc

    # pi/4 = 4*arctan(1/5) - arctan(1/239); term counts from the geometric tails.
    pi = 4 * (4 * arctan_inv(5, digits + 8) - arctan_inv(239, digits // 4 + 6))
    scale = 10 ** (digits + 4)
    return Fraction(int(pi * scale), scale)


def neville_extrapolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Fraction:
    """Polynomial extrapolation of (xs, ys) to x = 0, exact arithmetic."""
    n = len(xs)
    if n != len(ys) or n == 0:
        raise ValueError("need matching nonempty nodes")
    p = list(ys)
    for level in range(1, n):
        for i in range(n - level):
            # Neville update for target 0: p_i = (x_{i+level} p_i - x_i p_{i+1}) / (x_{i+level} - x_i)
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return p[0]


def extrapolate_partial_sums(partial_sum: Callable[[int], Fraction],
                             nodes: Sequence[int]) -> Fraction:
    """Extrapolate S(n) to n = infinity assuming an expansion in 1/n."""
    xs = [Fraction(1, n) for n in nodes]
    ys = [partial_sum(n) for n in nodes]
    return neville_extrapolate(xs, ys)

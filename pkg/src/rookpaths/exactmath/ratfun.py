"""Normalized rational functions: quotients of sparse polynomials.

The representation is always reduced: numerator and denominator are coprime,
the pair carries integer coefficients of joint content 1, and the denominator
has a positive leading coefficient in the graded-lex monomial order.  With
that convention two RatFun are equal as rational functions iff their stored
parts are identical, so equality is a dict comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from .mpoly import MPoly, mpoly_gcd, poly

Scalar = Union[int, Fraction]


class RatFun:
    """Immutable reduced fraction of two MPoly over the same variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, *, _reduced: bool = False):
        if den is None:
            den = MPoly.const(num.vars, 1)
        if num.vars != den.vars:
            raise ValueError(f"variable mismatch: {num.vars} vs {den.vars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = MPoly.const(num.vars, 1)
            return
        if not _reduced:
            g = mpoly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = num.divide_exact(g)
                den = den.divide_exact(g)
        # Joint scaling: integer coefficients, content 1, positive lead in den.
        scale = 1 / _joint_content(num, den)
        if den.leading_coeff() < 0:
            scale = -scale
        self.num = num * scale
        self.den = den * scale

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_scalar(value: Scalar, vars: Sequence[str]) -> RatFun:
        return RatFun(MPoly.const(vars, value))

    @staticmethod
    def from_mpoly(p: MPoly) -> RatFun:
        return RatFun(p)

    @staticmethod
    def _raw(num: MPoly, den: MPoly) -> RatFun:
        """Build from parts already known to be coprime (skips the gcd)."""
        return RatFun(num, den, _reduced=True)

    # -- predicates --------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_mpoly(self) -> MPoly:
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num * (1 / self.den.constant_value())

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFun.from_scalar(other, self.vars)
        elif isinstance(other, MPoly):
            other = RatFun(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> RatFun:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, MPoly):
            return RatFun(other)
        if isinstance(other, (int, Fraction)):
            return RatFun.from_scalar(other, self.vars)
        raise TypeError(f"cannot combine RatFun with {type(other)!r}")

    def __add__(self, other) -> RatFun:
        o = self._coerce(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        # Henrici addition: any common factor of the sum divides gcd(d1, d2),
        # so the final reduction works on small operands.
        g = mpoly_gcd(self.den, o.den)
        if g.is_constant():
            return RatFun(self.num * o.den + o.num * self.den,
                          self.den * o.den, _reduced=True)
        d1r = self.den.divide_exact(g)
        d2r = o.den.divide_exact(g)
        num = self.num * d2r + o.num * d1r
        if num.is_zero():
            return RatFun.from_scalar(0, self.vars)
        h = mpoly_gcd(num, g)
        if h.is_constant():
            return RatFun(num, d1r * o.den, _reduced=True)
        return RatFun(num.divide_exact(h), d1r * o.den.divide_exact(h), _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> RatFun:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RatFun:
        return (-self) + other

    def __mul__(self, other) -> RatFun:
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFun.from_scalar(0, self.vars)
        # Cross-reduce before multiplying to keep intermediates small.
        g1 = mpoly_gcd(self.num, o.den)
        g2 = mpoly_gcd(o.num, self.den)
        n1 = self.num.divide_exact(g1)
        d2 = o.den.divide_exact(g1)
        n2 = o.num.divide_exact(g2)
        d1 = self.den.divide_exact(g2)
        return RatFun(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFun:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFun(o.den, o.num, _reduced=True)

    def __rtruediv__(self, other) -> RatFun:
        return self._coerce(other) / self

    def __pow__(self, k: int) -> RatFun:
        if k < 0:
            return RatFun(self.den ** (-k), self.num ** (-k), _reduced=True)
        return RatFun(self.num ** k, self.den ** k, _reduced=True)

    # -- calculus & substitution ---------------------------------------------

    def derivative(self, name: str) -> RatFun:
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        if dd.is_zero():
            return RatFun(dn, self.den)
        g = mpoly_gcd(self.den, dd)
        # d/dv (n/d) = (n' d - n d')/d^2, with the common factor g pre-split.
        d_red = self.den.divide_exact(g)
        return RatFun(dn * d_red - self.num * dd.divide_exact(g), d_red * self.den)

    def extend_vars(self, newvars: Sequence[str]) -> RatFun:
        return RatFun(self.num.with_vars(newvars), self.den.with_vars(newvars), _reduced=True)

    def subs(self, values: Mapping[str, "RatFun"]) -> RatFun:
        """Substitute rational functions for variables (all share one ring)."""
        if not values:
            return self
        target = next(iter(values.values()))
        num = _eval_poly_at_ratfun(self.num, values, target.vars)
        den = _eval_poly_at_ratfun(self.den, values, target.vars)
        return num / den

    def eval_at(self, values: Mapping[str, Scalar]) -> RatFun:
        den = self.den.eval_at(values)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return RatFun(self.num.eval_at(values), den)

    # -- text form -------------------------------------------------------------

    def text(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self) -> str:
        return f"RatFun({self.text()!r})"

    @staticmethod
    def parse(text: str, vars: Sequence[str]) -> RatFun:
        text = text.strip()
        if text.startswith("(") and ")/(" in text and text.endswith(")"):
            ntext, _, dtext = text[1:-1].partition(")/(")
            return RatFun(MPoly.parse(ntext, vars), MPoly.parse(dtext, vars))
        return RatFun(MPoly.parse(text, vars))


def _joint_content(num: MPoly, den: MPoly) -> Fraction:
    cn = num.rational_content()
    cd = den.rational_content()
    # gcd of two positive rationals
    from math import gcd
    return Fraction(gcd(cn.numerator * (cd.denominator // gcd(cn.denominator, cd.denominator)),
                        cd.numerator * (cn.denominator // gcd(cn.denominator, cd.denominator))),
                    (cn.denominator * cd.denominator) // gcd(cn.denominator, cd.denominator))


def _eval_poly_at_ratfun(p: MPoly, values: Mapping[str, RatFun], tvars: tuple[str, ...]) -> RatFun:
    """Evaluate a polynomial at RatFun arguments over the target variable ring.

    Terms are grouped over a common denominator directly: each variable maps
    to num_i/den_i, so a monomial becomes a product of powers cleared by the
    lcm of the den_i powers.  This avoids repeated normalization.
    """
    for v in p.vars:
        if v not in values:
            raise ValueError(f"no substitution supplied for {v!r}")
    result = RatFun.from_scalar(0, tvars)
    nums = {v: values[v].num for v in p.vars}
    dens = {v: values[v].den for v in p.vars}
    for exp, c in p.terms.items():
        term = RatFun.from_scalar(c, tvars)
        for v, e in zip(p.vars, exp):
            if e:
                term = term * RatFun(nums[v] ** e, dens[v] ** e)
        result = result + term
    return result


def ratfun(text: str, vars: Sequence[str]) -> RatFun:
    """Build a RatFun from an expression with a single '/' at the top level."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and not _is_fraction_slash(text, i):
            return RatFun(poly(text[:i], vars), poly(text[i + 1:], vars))
    return RatFun(poly(text, vars))


def _is_fraction_slash(text: str, i: int) -> bool:
    """True when text[i] == '/' separates two integer literals (e.g. 3/2)."""
    j = i - 1
    while j >= 0 and text[j] == " ":
        j -= 1
    k = i + 1
    while k < len(text) and text[k] == " ":
        k += 1
    return j >= 0 and text[j].isdigit() and k < len(text) and text[k].isdigit()

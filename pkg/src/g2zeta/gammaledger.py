"""Formal algebra of products of gamma factors and completed-zeta factors.

A :class:`GammaExpr` is a product

    pref(s) * 2^(two) * pi^(pi) * prod Gamma(arg_i)^(e_i) * prod Lam(arg_j)^(e_j)

where ``pref`` is a rational function of s, the exponents ``two``/``pi`` are
affine in s, and every Gamma/Lam argument is affine in s with rational
coefficients.  Lam is the completed zeta factor, kept opaque except for its
reflection rule Lam(u) = Lam(1-u) and its simple poles at arguments 0 and 1.

Rewrite rules implemented: the shift Gamma(z+1) = z Gamma(z) (applied during
normalization), the duplication formula (user-invoked, both directions), and
Lam reflection.  Equality testing is up to an explicit constant of the form
rational * 2^a * pi^b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .exactalg import Poly, RatFun, RatFun as _RF, ratfun_reduce

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# affine forms q*s + r
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Affine:
    """q*s + r with rational q, r."""

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, a: Scalar, b: Scalar) -> "Affine":
        return cls(Fraction(a), Fraction(b))

    @classmethod
    def s_plus(cls, b: Scalar) -> "Affine":
        return cls(Fraction(1), Fraction(b))

    @classmethod
    def const(cls, b: Scalar) -> "Affine":
        return cls(Fraction(0), Fraction(b))

    def __add__(self, other) -> "Affine":
        if isinstance(other, Affine):
            return Affine(self.a + other.a, self.b + other.b)
        return Affine(self.a, self.b + Fraction(other))

    __radd__ = __add__

    def __neg__(self) -> "Affine":
        return Affine(-self.a, -self.b)

    def __sub__(self, other) -> "Affine":
        return self + (-other if isinstance(other, Affine) else -Fraction(other))

    def __rsub__(self, other) -> "Affine":
        return (-self) + other

    def __mul__(self, c: Scalar) -> "Affine":
        c = Fraction(c)
        return Affine(self.a * c, self.b * c)

    __rmul__ = __mul__

    def compose(self, inner: "Affine") -> "Affine":
        """Substitute s -> inner."""
        return Affine(self.a * inner.a, self.a * inner.b + self.b)

    def eval(self, sval: Scalar) -> Fraction:
        return self.a * Fraction(sval) + self.b

    def evalf(self, sval: float) -> float:
        return float(self.a) * sval + float(self.b)

    def to_poly(self) -> Poly:
        return Poly.affine("s", self.a, self.b)

    def is_const(self) -> bool:
        return self.a == 0

    def __repr__(self) -> str:
        if self.a == 0:
            return str(self.b)
        head = "s" if self.a == 1 else f"{self.a}*s"
        if self.b == 0:
            return head
        return f"{head}{'+' if self.b > 0 else '-'}{abs(self.b)}"


def _aff(x) -> Affine:
    if isinstance(x, Affine):
        return x
    return Affine.const(x)


# ---------------------------------------------------------------------------
# the expression type
# ---------------------------------------------------------------------------


def _merge(factors: Iterable[tuple[Affine, int]]) -> tuple[tuple[Affine, int], ...]:
    acc: dict[Affine, int] = {}
    for arg, e in factors:
        acc[arg] = acc.get(arg, 0) + e
    return tuple(sorted(((a, e) for a, e in acc.items() if e), key=lambda t: t[0]))


@dataclass(frozen=True)
class GammaExpr:
    pref: RatFun
    two: Affine
    pi: Affine
    gammas: tuple[tuple[Affine, int], ...]
    lams: tuple[tuple[Affine, int], ...]

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls) -> "GammaExpr":
        return cls(RatFun.const(1), Affine.const(0), Affine.const(0), (), ())

    @classmethod
    def from_const(cls, rational: Scalar = 1, two: Affine | Scalar = 0, pi: Affine | Scalar = 0) -> "GammaExpr":
        return cls(RatFun.const(rational), _aff(two), _aff(pi), (), ())

    @classmethod
    def from_pref(cls, pref) -> "GammaExpr":
        if isinstance(pref, Poly):
            pref = RatFun.from_poly(pref)
        elif not isinstance(pref, RatFun):
            pref = RatFun.const(pref)
        return cls(pref, Affine.const(0), Affine.const(0), (), ())

    @classmethod
    def gamma(cls, arg: Affine, exponent: int = 1) -> "GammaExpr":
        return cls(RatFun.const(1), Affine.const(0), Affine.const(0), _merge([(arg, exponent)]), ())

    @classmethod
    def lam(cls, arg: Affine, exponent: int = 1) -> "GammaExpr":
        return cls(RatFun.const(1), Affine.const(0), Affine.const(0), (), _merge([(arg, exponent)]))

    # -- multiplicative structure -------------------------------------------

    def __mul__(self, other: "GammaExpr") -> "GammaExpr":
        if not isinstance(other, GammaExpr):
            return GammaExpr(self.pref * other, self.two, self.pi, self.gammas, self.lams)
        return GammaExpr(
            self.pref * other.pref,
            self.two + other.two,
            self.pi + other.pi,
            _merge(self.gammas + other.gammas),
            _merge(self.lams + other.lams),
        )

    __rmul__ = __mul__

    def inverse(self) -> "GammaExpr":
        return GammaExpr(
            RatFun.const(1) / self.pref,
            -self.two,
            -self.pi,
            tuple((a, -e) for a, e in self.gammas),
            tuple((a, -e) for a, e in self.lams),
        )

    def __truediv__(self, other: "GammaExpr") -> "GammaExpr":
        return self * other.inverse()

    def __pow__(self, n: int) -> "GammaExpr":
        out = GammaExpr.one()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def subs_s(self, inner: Affine) -> "GammaExpr":
        """Substitute s -> inner (an affine form of s)."""
        poly = inner.to_poly()
        return GammaExpr(
            self.pref.subs({"s": poly}),
            self.two.compose(inner),
            self.pi.compose(inner),
            _merge((a.compose(inner), e) for a, e in self.gammas),
            _merge((a.compose(inner), e) for a, e in self.lams),
        )

    def __repr__(self) -> str:
        bits = []
        if self.pref != RatFun.const(1):
            bits.append(f"({self.pref!r})")
        if self.two != Affine.const(0):
            bits.append(f"2^({self.two!r})")
        if self.pi != Affine.const(0):
            bits.append(f"pi^({self.pi!r})")
        for a, e in self.gammas:
            bits.append(f"G({a!r})" + (f"^{e}" if e != 1 else ""))
        for a, e in self.lams:
            bits.append(f"L({a!r})" + (f"^{e}" if e != 1 else ""))
        return " * ".join(bits) if bits else "1"


# ---------------------------------------------------------------------------
# defining expansions
# ---------------------------------------------------------------------------


def expand_RC(kind: str, arg: Affine | Scalar) -> GammaExpr:
    """Real/complex gamma factors: pi^(-z/2) G(z/2) resp. 2 (2 pi)^(-z) G(z)."""
    arg = _aff(arg)
    if kind == "R":
        return GammaExpr(
            RatFun.const(1),
            Affine.const(0),
            arg * Fraction(-1, 2),
            _merge([(arg * Fraction(1, 2), 1)]),
            (),
        )
    if kind == "C":
        return GammaExpr(
            RatFun.const(1),
            Affine.const(1) - arg,
            -arg,
            _merge([(arg, 1)]),
            (),
        )
    raise ValueError("kind must be 'R' or 'C'")


def completed_zeta(arg: Affine | Scalar, exponent: int = 1) -> GammaExpr:
    return GammaExpr.lam(_aff(arg), exponent)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _poch_affine(arg: Affine, n: int) -> Poly:
    """Product (arg)(arg+1)...(arg+n-1) as a Poly in s."""
    out = Poly.const(1)
    for i in range(n):
        out = out * (arg + i).to_poly()
    return out


def gamma_normalize(e: GammaExpr) -> GammaExpr:
    """Shift every Gamma argument to the canonical representative of its
    integer-shift class, moving the accumulated linear factors into the
    rational prefactor.

    The representative has constant term equal to the fractional part of the
    original constant term, except that purely constant integer arguments use
    representative 1 (argument 0 would sit on a pole of Gamma).
    """
    pref = e.pref
    out: list[tuple[Affine, int]] = []
    for arg, exp in e.gammas:
        target_b = _frac_part(arg.b)
        if arg.a == 0 and target_b == 0:
            target_b = Fraction(1)
        rep = Affine(arg.a, target_b)
        n = arg.b - target_b
        assert n.denominator == 1
        n = int(n)
        if n > 0:
            pref = pref * RatFun.from_poly(_poch_affine(rep, n)) ** exp
        elif n < 0:
            pref = pref / RatFun.from_poly(_poch_affine(arg, -n)) ** exp
        out.append((rep, exp))
    merged = []
    pi = e.pi
    for arg, exp in _merge(out):
        if arg.a == 0 and arg.b == 1:
            continue  # Gamma(1) = 1
        if arg.a == 0 and arg.b == Fraction(1, 2):
            pi = pi + Fraction(exp, 2)  # Gamma(1/2)^e = pi^(e/2)
            continue
        merged.append((arg, exp))
    return GammaExpr(pref, e.two, pi, tuple(merged), e.lams)


def lambda_canonicalize(e: GammaExpr) -> GammaExpr:
    """Replace every Lam argument u by the representative of {u, 1-u}:
    positive leading s-coefficient, ties broken by the larger constant term."""
    out = []
    for arg, exp in e.lams:
        refl = Affine.const(1) - arg
        if (arg.a, arg.b) >= (refl.a, refl.b):
            rep = arg
        else:
            rep = refl
        out.append((rep, exp))
    return GammaExpr(e.pref, e.two, e.pi, e.gammas, _merge(out))


def normalize(e: GammaExpr) -> GammaExpr:
    return lambda_canonicalize(gamma_normalize(e))


def apply_duplication(e: GammaExpr, z: Affine, direction: str = "forward") -> GammaExpr:
    """Rewrite G(z) G(z+1/2) <-> 2^(1-2z) sqrt(pi) G(2z).

    ``forward`` consumes the pair G(z)G(z+1/2); ``backward`` consumes G(2z).
    Raises ValueError when the target factors are absent.
    """
    gammas = dict(e.gammas)
    half = z + Fraction(1, 2)
    double = z * 2
    if direction == "forward":
        if gammas.get(z, 0) < 1 or gammas.get(half, 0) < 1:
            raise ValueError(f"factors G({z!r}) G({z!r}+1/2) not present")
        gammas[z] -= 1
        gammas[half] -= 1
        gammas[double] = gammas.get(double, 0) + 1
        return GammaExpr(
            e.pref,
            e.two + (Affine.const(1) - z * 2),
            e.pi + Fraction(1, 2),
            _merge(gammas.items()),
            e.lams,
        )
    if direction == "backward":
        if gammas.get(double, 0) < 1:
            raise ValueError(f"factor G(2*({z!r})) not present")
        gammas[double] -= 1
        gammas[z] = gammas.get(z, 0) + 1
        gammas[half] = gammas.get(half, 0) + 1
        return GammaExpr(
            e.pref,
            e.two + (z * 2 - 1),
            e.pi - Fraction(1, 2),
            _merge(gammas.items()),
            e.lams,
        )
    raise ValueError("direction must be 'forward' or 'backward'")


# ---------------------------------------------------------------------------
# comparison up to a constant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpToConstant:
    rational: Fraction
    two: Fraction
    pi: Fraction

    def is_one(self) -> bool:
        return self.rational == 1 and self.two == 0 and self.pi == 0

    def as_float(self) -> float:
        return float(self.rational) * 2.0 ** float(self.two) * math.pi ** float(self.pi)

    def __repr__(self) -> str:
        return f"{self.rational} * 2^{self.two} * pi^{self.pi}"


def equal_up_to_constant(e1: GammaExpr, e2: GammaExpr) -> tuple[bool, UpToConstant | None]:
    """True iff e1/e2 is a constant of the form rational * 2^a * pi^b.

    Both sides are normalized first; the constant (e1/e2) is returned when the
    comparison succeeds.
    """
    a = normalize(e1)
    b = normalize(e2)
    if a.gammas != b.gammas or a.lams != b.lams:
        return False, None
    dtwo = a.two - b.two
    dpi = a.pi - b.pi
    if dtwo.a != 0 or dpi.a != 0:
        return False, None
    ratio = a.pref / b.pref
    if not ratio.is_const():
        return False, None
    return True, UpToConstant(ratio.const_value(), dtwo.b, dpi.b)


def exprs_equal(e1: GammaExpr, e2: GammaExpr) -> bool:
    ok, const = equal_up_to_constant(e1, e2)
    return ok and const.is_one()


# ---------------------------------------------------------------------------
# pole orders
# ---------------------------------------------------------------------------


def _root_multiplicity(p: Poly, s0: Fraction) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = p.to_dense("s")
    mult = 0
    while len(coeffs) > 1:
        # synthetic division by (s - s0); acc ends as the remainder p(s0)
        q = [Fraction(0)] * (len(coeffs) - 1)
        acc = coeffs[-1]
        for i in range(len(coeffs) - 2, -1, -1):
            q[i] = acc
            acc = acc * s0 + coeffs[i]
        if acc != 0:
            return mult
        coeffs = q
        mult += 1
    return mult


def pole_order_at(e: GammaExpr, s0: Scalar) -> int:
    """Total pole order at s = s0 (poles count positive, zeros negative).

    Gamma factors contribute via arguments landing in the non-positive
    integers; Lam factors contribute simple poles when their argument is 0 or
    1; the rational prefactor contributes its order of vanishing with the
    opposite sign.
    """
    s0 = Fraction(s0)
    e = normalize(e)
    order = 0
    for arg, exp in e.gammas:
        val = arg.eval(s0)
        if val.denominator == 1 and val <= 0:
            order += exp
    for arg, exp in e.lams:
        val = arg.eval(s0)
        if val in (0, 1):
            order += exp
    order += _root_multiplicity(e.pref.den, s0)
    order -= _root_multiplicity(e.pref.num, s0)
    return order


# ---------------------------------------------------------------------------
# archimedean factor and trivial zeros
# ---------------------------------------------------------------------------


def arch_L_factor(ell: int) -> GammaExpr:
    """Archimedean factor for even weight ell >= 2: three complex factors at
    s+ell-1, s+ell, s+2*ell-1 and a real factor at s+1."""
    if ell % 2 or ell < 2:
        raise ValueError("weight must be an even integer >= 2")
    s = Affine.s_plus
    return (
        expand_RC("C", s(ell - 1))
        * expand_RC("C", s(ell))
        * expand_RC("C", s(2 * ell - 1))
        * expand_RC("R", s(1))
    )


def trivial_zero_orders(ell: int, n_range: Iterable[int]) -> dict[int, int]:
    """Forced vanishing orders of the finite-part L-function at s = -n.

    Valid only in the regime n >= 2*ell - 1 where all three complex-factor
    arguments are non-positive: order 3 at even -n, order 4 at odd -n.
    """
    if ell % 2 or ell < 2:
        raise ValueError("weight must be an even integer >= 2")
    out = {}
    for n in n_range:
        if n < 2 * ell - 1:
            raise ValueError(f"n={n} is outside the asymptotic regime (need n >= {2 * ell - 1})")
        out[-n] = 3 if n % 2 == 0 else 4
    return out


def normalization_identity_sides(ell: int) -> tuple[GammaExpr, GammaExpr]:
    """Both sides of the real/complex-factor rewriting of the normalized
    Eisenstein prefactor at even weight ell.

    As displayed the two sides agree only up to the weight-dependent constant
    2^(2*ell-3) * pi^(2*ell); see the regression test pinning that constant.
    """
    if ell % 2 or ell < 2:
        raise ValueError("weight must be an even integer >= 2")
    s = Affine.s_plus
    lhs = (
        expand_RC("R", s(-1)) ** 2
        * expand_RC("R", s(0))
        * expand_RC("R", Affine.of(2, -4))
        * GammaExpr.gamma(s(ell - 1))
        * GammaExpr.gamma(s(ell - 2))
        / (GammaExpr.gamma(s(-1)) * GammaExpr.gamma(s(-2)))
    )
    rhs = (
        GammaExpr.from_const(two=Affine.of(1, 0))
        * expand_RC("R", s(-1))
        * expand_RC("C", s(ell - 1))
        * expand_RC("C", s(ell - 2))
    )
    return lhs, rhs


def normalization_identity_constant(ell: int) -> UpToConstant:
    """Reduce lhs/rhs of :func:`normalization_identity_sides` to an explicit
    constant, using one forward duplication rewrite at z = s/2."""
    lhs, rhs = normalization_identity_sides(ell)
    ratio = normalize(lhs / rhs)
    ratio = apply_duplication(ratio, Affine.of(Fraction(1, 2), 0))
    ok, const = equal_up_to_constant(ratio, GammaExpr.one())
    if not ok:
        raise AssertionError("normalization display failed to reduce to a constant")
    return const


# ---------------------------------------------------------------------------
# numeric evaluation (shared gamma routine)
# ---------------------------------------------------------------------------


def gamma_value(x: float) -> float:
    """Shared numeric gamma used by every numeric comparison in the package."""
    return math.gamma(x)


def gamma_log_abs(x: float) -> tuple[int, float]:
    """(sign, log|Gamma(x)|); x must not be a non-positive integer."""
    if x > 0:
        return 1, math.lgamma(x)
    n = math.floor(-x)
    sign = -1 if n % 2 == 0 else 1
    return sign, math.lgamma(x)


def _eval_poly_float(p: Poly, x: float) -> float:
    total = 0.0
    for e, c in p.terms.items():
        val = float(c)
        for name, exp in zip(p.vars, e):
            if name != "s":
                raise ValueError("numeric evaluation expects expressions in s only")
            val *= x**exp
        total += val
    return total if p.terms else 0.0


def numeric_log(e: GammaExpr, sval: float) -> tuple[int, float]:
    """(sign, log|e(s)|); raises on Lam factors or on poles."""
    if e.lams:
        raise ValueError("cannot numerically evaluate opaque completed-zeta factors")
    num = _eval_poly_float(e.pref.num, sval)
    den = _eval_poly_float(e.pref.den, sval)
    if den == 0 or num == 0:
        raise ZeroDivisionError("prefactor vanishes or blows up at this point")
    sign = 1
    log = math.log(abs(num)) - math.log(abs(den))
    if num * den < 0:
        sign = -sign
    log += e.two.evalf(sval) * math.log(2.0) + e.pi.evalf(sval) * math.log(math.pi)
    for arg, exp in e.gammas:
        gsign, glog = gamma_log_abs(arg.evalf(sval))
        log += exp * glog
        if exp % 2 and gsign < 0:
            sign = -sign
    return sign, log


def numeric(e: GammaExpr, sval: float) -> float:
    sign, log = numeric_log(e, sval)
    return sign * math.exp(log)


# ---------------------------------------------------------------------------
# exact constant extraction (constant-argument expressions)
# ---------------------------------------------------------------------------


def constant_value(e: GammaExpr) -> UpToConstant:
    """Exact value rational * 2^a * pi^b for expressions whose Gamma arguments
    are all constant integers or half-integers and with no Lam content."""
    if e.lams:
        raise ValueError("expression has completed-zeta factors")
    e = gamma_normalize(e)
    if e.gammas:
        raise ValueError(f"non-reducible gamma content remains: {e.gammas}")
    if not e.pref.is_const() or e.two.a != 0 or e.pi.a != 0:
        raise ValueError("expression is not constant in s")
    return UpToConstant(e.pref.const_value(), e.two.b, e.pi.b)

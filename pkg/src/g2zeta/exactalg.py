"""Exact arithmetic kernel: sparse multivariate polynomials over Q, reduced
rational functions, Pochhammer products, and truncated bivariate power series
with polynomial coefficients.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely across threads and test cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

# Fixed global symbol order (graded lexicographic ties broken by this order).
_SYMBOL_ORDER = ("s", "z", "w", "u", "v", "x", "y")


def _sym_key(name: str) -> tuple[int, str]:
    try:
        return (_SYMBOL_ORDER.index(name), name)
    except ValueError:
        return (len(_SYMBOL_ORDER), name)


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Sparse polynomial over Q in named symbols.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    Fraction coefficients.  ``vars`` is kept sorted under the global symbol
    order; unused symbols are pruned so equal polynomials compare equal.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...] = (), terms: Mapping | None = None):
        terms = terms or {}
        # prune zero coefficients and unused variables
        clean = {e: _as_fraction(c) for e, c in terms.items() if c != 0}
        if clean and vars:
            used = [i for i in range(len(vars)) if any(e[i] for e in clean)]
            if len(used) != len(vars):
                vars = tuple(vars[i] for i in used)
                clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        if not clean:
            vars = ()
            clean = {}
        self.vars = vars
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        return cls((), {(): c}) if c else cls()

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def affine(cls, name: str, a: Scalar, b: Scalar) -> "Poly":
        """a*name + b."""
        return cls.var(name) * a + cls.const(b)

    # -- bookkeeping -------------------------------------------------------

    def _aligned(self, other: "Poly") -> tuple[tuple[str, ...], dict, dict]:
        if self.vars == other.vars:
            return self.vars, dict(self.terms), dict(other.terms)
        allvars = tuple(sorted(set(self.vars) | set(other.vars), key=_sym_key))

        def remap(p: "Poly") -> dict:
            idx = [p.vars.index(v) if v in p.vars else None for v in allvars]
            out = {}
            for e, c in p.terms.items():
                out[tuple(0 if i is None else e[i] for i in idx)] = c
            return out

        return allvars, remap(self), remap(other)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def leading_grlex(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (exponent, coefficient) under graded lex."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        key = lambda e: (sum(e), e)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        vars, a, b = self._aligned(other)
        for e, c in b.items():
            a[e] = a.get(e, Fraction(0)) + c
        return Poly(vars, a)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-other if isinstance(other, Poly) else Poly.const(other).__neg__())

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            return Poly(self.vars, {e: k * c for e, k in self.terms.items()})
        vars, a, b = self._aligned(other)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a Poly")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return self.is_const() and (not self.terms or self.const_value() == other)
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- substitution ------------------------------------------------------

    def subs(self, assignment: Mapping[str, Union["Poly", Scalar]]) -> "Poly":
        """Substitute polynomials or scalars for symbols."""
        out = Poly.zero()
        for e, c in self.terms.items():
            term = Poly.const(c)
            for name, exp in zip(self.vars, e):
                if exp == 0:
                    continue
                if name in assignment:
                    rep = assignment[name]
                    rep = rep if isinstance(rep, Poly) else Poly.const(rep)
                    term = term * rep**exp
                else:
                    term = term * Poly.var(name) ** exp
            out = out + term
        return out

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"unassigned symbols: {missing}")
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for name, exp in zip(self.vars, e):
                if exp:
                    val *= _as_fraction(assignment[name]) ** exp
            total += val
        return total

    # -- dense univariate helpers ------------------------------------------

    def to_dense(self, name: str) -> list[Fraction]:
        """Coefficient list [c0, c1, ...] of a univariate polynomial."""
        if self.vars not in ((), (name,)):
            raise ValueError(f"not univariate in {name!r}: vars={self.vars}")
        n = self.degree_in(name)
        out = [Fraction(0)] * (n + 1)
        for e, c in self.terms.items():
            out[e[0] if e else 0] = c
        return out

    @classmethod
    def from_dense(cls, name: str, coeffs: Iterable[Scalar]) -> "Poly":
        return cls((name,), {(i,): _as_fraction(c) for i, c in enumerate(coeffs)})

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        key = lambda e: (sum(e), e)
        for e in sorted(self.terms, key=key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------


def _int_content(p: list[int]) -> int:
    from math import gcd

    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g or 1


def _int_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        dr, lr = len(r) - 1, r[-1]
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[dr - db + i] -= lr * b[i]
        r = _int_trim(r)
    return r


def _int_gcd_univ(a: list[int], b: list[int]) -> list[int]:
    a, b = _int_trim(list(a)), _int_trim(list(b))
    if not a:
        return b
    if not b:
        return a
    a = [c // _int_content(a) for c in a]
    b = [c // _int_content(b) for c in b]
    while b:
        r = _int_pseudo_rem(a, b)
        r = _int_trim(r)
        if r:
            g = _int_content(r)
            r = [c // g for c in r]
        a, b = b, r
    if a[-1] < 0:
        a = [-c for c in a]
    return a


def _univ_gcd(p: Poly, q: Poly, name: str) -> Poly:
    pa, qa = p.to_dense(name), q.to_dense(name)

    def to_int(d: list[Fraction]) -> list[int]:
        from math import lcm

        den = 1
        for c in d:
            den = lcm(den, c.denominator)
        return [int(c * den) for c in d]

    g = _int_gcd_univ(to_int(pa), to_int(qa))
    return Poly.from_dense(name, g)


def _poly_divmod_main(a: Poly, b: Poly, name: str) -> tuple[Poly, Poly]:
    """Pseudo-free exact-leaning division by main variable; used by divexact."""
    q = Poly.zero()
    r = a
    db = b.degree_in(name)
    lead_b = _coeff_of(b, name, db)
    while not r.is_zero() and r.degree_in(name) >= db:
        dr = r.degree_in(name)
        lead_r = _coeff_of(r, name, dr)
        factor, rem = _try_divexact(lead_r, lead_b)
        if rem is not None:
            raise ArithmeticError("inexact division")
        t = factor * Poly.var(name) ** (dr - db)
        q = q + t
        r = r - t * b
        if r.degree_in(name) == dr and not r.is_zero() and _coeff_of(r, name, dr) == lead_r:
            raise ArithmeticError("division does not reduce degree")
    return q, r


def _coeff_of(p: Poly, name: str, k: int) -> Poly:
    """Coefficient of name**k as a Poly in the remaining variables."""
    if name not in p.vars:
        return p if k == 0 else Poly.zero()
    i = p.vars.index(name)
    rest = tuple(v for j, v in enumerate(p.vars) if j != i)
    terms = {}
    for e, c in p.terms.items():
        if e[i] == k:
            terms[tuple(x for j, x in enumerate(e) if j != i)] = c
    return Poly(rest, terms)


def _try_divexact(a: Poly, b: Poly):
    """Return (a/b, None) if exact, else (None, remainder marker)."""
    if b.is_const():
        return a * (1 / b.const_value()), None
    try:
        q, r = _poly_divmod_main(a, b, a.vars[-1] if a.vars else b.vars[-1])
    except ArithmeticError:
        return None, True
    if r.is_zero():
        return q, None
    return None, True


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return Poly.zero()
    if b.is_const():
        return a * (1 / b.const_value())
    used = sorted(set(a.vars) | set(b.vars), key=_sym_key)
    name = used[-1]
    q, r = _poly_divmod_main(a, b, name)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """gcd over Q, normalized to integer primitive form with positive lead."""
    if p.is_zero():
        return _normalize_gcd(q)
    if q.is_zero():
        return _normalize_gcd(p)
    if p.is_const() or q.is_const():
        return Poly.const(1)
    used = sorted(set(p.vars) | set(q.vars), key=_sym_key)
    if len(used) == 1:
        return _univ_gcd(p, q, used[0])
    # multivariate: recurse on the last variable in the order
    name = used[-1]
    pc, pp = _content_primitive(p, name)
    qc, qp = _content_primitive(q, name)
    cont = poly_gcd(pc, qc)
    a, b = pp, qp
    while not b.is_zero() and b.degree_in(name) > 0:
        r = _pseudo_rem_poly(a, b, name)
        if not r.is_zero():
            _, r = _content_primitive(r, name)
        a, b = b, r
    if b.is_zero():
        g = _content_primitive(a, name)[1]
    else:
        g = Poly.const(1)
    return _normalize_gcd(cont * g)


def _content_primitive(p: Poly, name: str) -> tuple[Poly, Poly]:
    coeffs = [_coeff_of(p, name, k) for k in range(p.degree_in(name) + 1)]
    coeffs = [c for c in coeffs if not c.is_zero()]
    cont = Poly.zero()
    for c in coeffs:
        cont = poly_gcd(cont, c)
    return cont, poly_divexact(p, cont)


def _pseudo_rem_poly(a: Poly, b: Poly, name: str) -> Poly:
    da, db = a.degree_in(name), b.degree_in(name)
    if da < db:
        return a
    lb = _coeff_of(b, name, db)
    r = a * lb ** (da - db + 1)
    while not r.is_zero() and r.degree_in(name) >= db:
        dr = r.degree_in(name)
        lr = _coeff_of(r, name, dr)
        factor, bad = _try_divexact(lr, lb)
        if bad is not None:
            # fall back: multiply through once more
            r = r * lb
            continue
        r = r - factor * Poly.var(name) ** (dr - db) * b
    return r


def _normalize_gcd(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, lead = p.leading_grlex()
    return p * (1 / lead)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatFun:
    """Reduced rational function; denominator monic under graded lex."""

    num: Poly
    den: Poly

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.const(1))

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls(Poly.const(c), Poly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def __add__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        return ratfun_reduce(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        return self + (-_as_ratfun(other))

    def __rsub__(self, other) -> "RatFun":
        return _as_ratfun(other) - self

    def __mul__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        return ratfun_reduce(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = _as_ratfun(other)
        return ratfun_reduce(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFun":
        return _as_ratfun(other) / self

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return RatFun.const(1) / self ** (-n)
        out = RatFun.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = _as_ratfun(other)
        return self.num == other.num and self.den == other.den

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        return self.num.eval(assignment) / self.den.eval(assignment)

    def subs(self, assignment) -> "RatFun":
        return ratfun_reduce(self.num.subs(assignment), self.den.subs(assignment))

    def __repr__(self) -> str:
        if self.den == Poly.const(1):
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _as_ratfun(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, Poly):
        return RatFun.from_poly(x)
    return RatFun.const(x)


def ratfun_reduce(num: Poly, den: Poly) -> RatFun:
    """Canonical reduced form: gcd removed, denominator grlex-monic."""
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return RatFun(Poly.zero(), Poly.const(1))
    g = poly_gcd(num, den)
    if not g.is_const():
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    _, lead = den.leading_grlex()
    return RatFun(num * (1 / lead), den * (1 / lead))


# ---------------------------------------------------------------------------
# Pochhammer products and truncated series
# ---------------------------------------------------------------------------


def pochhammer(base: Union[Poly, Scalar], k: int) -> Poly:
    """Rising product base*(base+1)*...*(base+k-1); empty product is 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    base = base if isinstance(base, Poly) else Poly.const(base)
    out = Poly.const(1)
    for i in range(k):
        out = out * (base + i)
    return out


@dataclass(frozen=True)
class TruncSeries:
    """Truncated expansion sum_{j+k <= cutoff} coeff[j,k] * u^j v^k, where the
    coefficients are polynomials in a named exponent symbol."""

    uvars: tuple[str, str]
    wsym: str
    cutoff: int
    coeffs: Mapping[tuple[int, int], Poly]

    def coefficient(self, j: int, k: int) -> Poly:
        if j + k > self.cutoff:
            raise ValueError("requested order beyond the truncation cutoff")
        return self.coeffs.get((j, k), Poly.zero())


def series_pow(base: Poly, wsym: str, cutoff: int) -> TruncSeries:
    """Expand (1 - base)^(-w) as a truncated series in the base variables.

    ``base`` must have zero constant term so the binomial series
    sum_k (w)_k base^k / k! terminates at total degree ``cutoff``.
    """
    uvars = tuple(sorted(set(base.vars), key=_sym_key))
    if len(uvars) > 2 or wsym in uvars:
        raise ValueError("base must involve at most two variables distinct from the exponent symbol")
    if len(uvars) == 0:
        uvars = ("u", "v")
    elif len(uvars) == 1:
        uvars = (uvars[0], "v" if uvars[0] != "v" else "u")
    if any(sum(e) == 0 for e in base.terms):
        raise ValueError("base must have zero constant term")

    w = Poly.var(wsym)
    coeffs: dict[tuple[int, int], Poly] = {(0, 0): Poly.const(1)}
    power = Poly.const(1)  # base^k, truncated
    for k in range(1, cutoff + 1):
        power = _truncate(power * base, cutoff)
        if power.is_zero():
            break
        factor = pochhammer(w, k) * Fraction(1, factorial(k))
        for e, c in power.terms.items():
            jk = _exps_in(power.vars, e, uvars)
            key = (jk[0], jk[1])
            coeffs[key] = coeffs.get(key, Poly.zero()) + factor * c
    return TruncSeries(uvars, wsym, cutoff, coeffs)


def _truncate(p: Poly, cutoff: int) -> Poly:
    return Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e) <= cutoff})


def _exps_in(vars: tuple[str, ...], e: tuple[int, ...], uvars: tuple[str, str]) -> tuple[int, int]:
    out = []
    for name in uvars:
        out.append(e[vars.index(name)] if name in vars else 0)
    return tuple(out)

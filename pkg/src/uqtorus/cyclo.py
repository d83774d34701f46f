"""Exact arithmetic in the cyclotomic field Q(zeta_4p).

The field contains q = zeta^2 (a primitive 2p-th root of unity), the fixed
square root q^{1/2} = zeta and i = zeta^p.  Elements are stored as rational
polynomials in zeta reduced modulo the 4p-th cyclotomic polynomial, so two
elements are equal exactly when their coefficient vectors agree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from flint import acb, arb, ctx as flint_ctx, fmpq, fmpq_poly, fmpz_poly


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if _gcd(k, n) == 1)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class FieldContext:
    """Q(zeta_4p) together with its distinguished elements."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"p must be an integer >= 2, got {p!r}")
        self.p = p
        self.order = 4 * p
        self.modulus = fmpq_poly(fmpz_poly.cyclotomic(self.order).coeffs())
        self.degree = self.modulus.degree()
        self._zeta_pows = [self._from_poly(fmpq_poly([0] * k + [1])) for k in range(self.order)]
        self.zero = CycloNum(self, fmpq_poly())
        self.one = CycloNum(self, fmpq_poly([1]))
        self.zeta = self._zeta_pows[1]
        self.qhalf = self.zeta
        self.q = self._zeta_pows[2]
        self.i = self._zeta_pows[p]
        self.qhat = self.q - self.q.inv()
        self._qint_cache: dict[int, CycloNum] = {}
        if self.q ** p != -self.one or any(self.q ** k == self.one for k in range(1, 2 * p)):
            raise ArithmeticError("q is not a primitive 2p-th root of unity")

    def _from_poly(self, poly) -> "CycloNum":
        return CycloNum(self, poly % self.modulus)

    def __repr__(self):
        return f"FieldContext(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.p == self.p

    def __hash__(self):
        return hash(("FieldContext", self.p))

    def __reduce__(self):
        return (field_context, (self.p,))

    # constructors -------------------------------------------------------

    def zeta_pow(self, k: int) -> "CycloNum":
        """zeta^k = q^{k/2} for any integer k."""
        return self._zeta_pows[k % self.order]

    def q_pow(self, k) -> "CycloNum":
        """q^k; k may be a half-integer given as Fraction."""
        twice = 2 * Fraction(k)
        if twice.denominator != 1:
            raise ValueError(f"q-exponent {k} is not a half-integer")
        return self.zeta_pow(int(twice))

    def rational(self, value) -> "CycloNum":
        if isinstance(value, CycloNum):
            return value
        value = Fraction(value)
        return CycloNum(self, fmpq_poly([fmpq(value.numerator, value.denominator)]))

    def from_coeffs(self, coeffs) -> "CycloNum":
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        vals = []
        for c in coeffs:
            c = Fraction(c)
            vals.append(fmpq(c.numerator, c.denominator))
        return CycloNum(self, fmpq_poly(vals))

    def from_json(self, obj) -> "CycloNum":
        return self.from_coeffs([Fraction(s) for s in obj["coeffs"]])

    # q-combinatorics ------------------------------------------------------

    def qint(self, n: int) -> "CycloNum":
        """[n] = (q^n - q^{-n}) / (q - q^{-1})."""
        if n not in self._qint_cache:
            self._qint_cache[n] = (self.q_pow(n) - self.q_pow(-n)) / self.qhat
        return self._qint_cache[n]

    def qfact(self, n: int) -> "CycloNum":
        if n < 0 or n > self.p - 1:
            raise ValueError(f"[n]! is only defined for 0 <= n <= p-1 (got n={n}, p={self.p})")
        out = self.one
        for m in range(1, n + 1):
            out = out * self.qint(m)
        return out

    def qbinom(self, n: int, k: int) -> "CycloNum":
        """Gaussian binomial via the q-Pascal rule (valid for all n, also n >= p)."""
        if k < 0 or k > n:
            return self.zero
        return _qbinom(self, n, k)


@lru_cache(maxsize=None)
def field_context(p: int) -> FieldContext:
    return FieldContext(p)


@lru_cache(maxsize=None)
def _qbinom_cached(p, n, k):
    ctx = field_context(p)
    if k == 0 or k == n:
        return ctx.one
    # [n, k] = q^{-k}[n-1, k] + q^{n-k}[n-1, k-1]
    return ctx.q_pow(-k) * _qbinom_cached(p, n - 1, k) + ctx.q_pow(n - k) * _qbinom_cached(p, n - 1, k - 1)


def _qbinom(ctx, n, k):
    return _qbinom_cached(ctx.p, n, k)


class CycloNum:
    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: FieldContext, poly):
        self.ctx = ctx
        self.poly = poly

    # conversions ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction, fmpq)):
            return self.ctx.rational(Fraction(int(other)) if isinstance(other, int) else other)
        return NotImplemented

    @property
    def coeffs(self) -> list[Fraction]:
        raw = self.poly.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        return out + [Fraction(0)] * (self.ctx.degree - len(out))

    def to_json(self) -> dict:
        return {"coeffs": [_frac_str(c) for c in self.coeffs]}

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, other.poly - self.poly)

    def __neg__(self):
        return CycloNum(self.ctx, -self.poly)

    def __mul__(self, other):
        if isinstance(other, CycloNum):
            prod = self.poly * other.poly
            if prod.degree() >= self.ctx.degree:
                prod = prod % self.ctx.modulus
            return CycloNum(self.ctx, prod)
        if isinstance(other, (int, Fraction, fmpq)):
            if isinstance(other, Fraction):
                other = fmpq(other.numerator, other.denominator)
            return CycloNum(self.ctx, self.poly * other)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        g, s, _ = self.poly.xgcd(self.ctx.modulus)
        # g is a nonzero constant since the modulus is irreducible
        return CycloNum(self.ctx, (s / g.coeffs()[0]) % self.ctx.modulus)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            other = Fraction(other)
            return CycloNum(self.ctx, self.poly * fmpq(other.denominator, other.numerator))
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CycloNum":
        """Complex conjugation zeta -> zeta^{-1}."""
        out = self.ctx.zero
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + self.ctx.zeta_pow(-k) * c
        return out

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == self.ctx.rational(other).poly
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return not self.poly.is_zero()

    def __repr__(self):
        return f"CycloNum({self})"

    def __str__(self):
        if self.poly.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{cs}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def complex_embed(x: CycloNum, precision: int = 128) -> acb:
    """Interval enclosure of x under zeta -> exp(2 pi i / 4p)."""
    old = flint_ctx.prec
    flint_ctx.prec = max(precision, 53) + 20
    try:
        n = x.ctx.order
        zeta = acb(arb(2) / n).exp_pi_i()
        total = acb(0)
        power = acb(1)
        for c in x.coeffs:
            if c:
                total += power * acb(arb(fmpq(c.numerator, c.denominator)))
            power *= zeta
        return total
    finally:
        flint_ctx.prec = old


def to_complex(x: CycloNum) -> complex:
    v = complex_embed(x, 64)
    return complex(float(v.real.mid()), float(v.imag.mid()))

"""Cyclotomic scalars and truncated power series over them.

``CycloScalar`` is an element of Q(zeta_L) = Q[x]/Phi_L(x), stored as its
reduced coefficient vector in the power basis 1, x, ..., x^(phi(L)-1).
``TruncSeries`` is a univariate power series in U truncated after U^D whose
coefficients are Fractions or CycloScalars of a single level.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, LevelError, NotRational, PoleAtZero


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L):
    """Integer coefficients of Phi_L, lowest degree first."""
    if L < 1:
        raise ValueError("level must be positive")
    num = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return out


def _reduce(coeffs, L):
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    a = list(coeffs)
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j in range(deg):
                a[i - deg + j] -= c * phi[j]
            a[i] = 0
    a = a[:deg] + [0] * (deg - len(a))
    return tuple(Fraction(x) for x in a)


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


class CycloScalar:
    __slots__ = ("level", "coeffs")

    def __init__(self, level, coeffs):
        self.level = int(level)
        self.coeffs = _reduce(coeffs, self.level)

    @classmethod
    def rational(cls, x, level=1):
        return cls(level, [Fraction(x)])

    @classmethod
    def root(cls, exponent, level):
        """zeta_level ** exponent."""
        e = exponent % level
        return cls(level, [0] * e + [1])

    # coercion ------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, CycloScalar):
            if other.level == self.level:
                return self, other
            if other.level == 1:
                return self, CycloScalar(self.level, other.coeffs)
            if self.level == 1:
                return CycloScalar(other.level, self.coeffs), other
            raise LevelError(f"LevelError: cannot combine levels {self.level} and {other.level}")
        if isinstance(other, (int, Fraction)):
            return self, CycloScalar(self.level, [other])
        return None, None

    def __add__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return CycloScalar(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.level, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return CycloScalar(a.level, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloScalar(self.level, [x * other for x in self.coeffs])
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return CycloScalar(a.level, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("DivisionByZero")
            return self * (1 / Fraction(other))
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycloScalar):
            try:
                a, b = self._lift(other)
            except LevelError:
                return False
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.level, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"CycloScalar({self.level}: {' + '.join(terms) or '0'})"

    # field operations ----------------------------------------------------

    def is_rational(self):
        return not any(self.coeffs[1:])

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_L."""
        if not self:
            raise DivisionByZero("DivisionByZero: zero has no inverse")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return CycloScalar(self.level, [x / c for x in s1])

    def embed(self, level):
        """Image in Q(zeta_level) for a multiple ``level`` of the current level."""
        if level % self.level:
            raise LevelError(f"LevelError: {level} is not a multiple of {self.level}")
        step = level // self.level
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return CycloScalar(level, out)

    def conjugate(self, a):
        """Galois conjugate zeta -> zeta**a (gcd(a, level) == 1)."""
        if math.gcd(a, self.level) != 1:
            raise ValueError("exponent must be a unit")
        out = CycloScalar(self.level, [0])
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycloScalar.root(i * a, self.level) * c
        return out


def cyclo_embed(gamma, level=None):
    """The root of unity exp(2 pi i gamma) as an element of Q(zeta_level)."""
    gamma = Fraction(gamma) % 1
    level = gamma.denominator if level is None else int(level)
    e = gamma * level
    if e.denominator != 1:
        raise LevelError(f"LevelError: level {level} is not a multiple of {gamma.denominator}")
    return CycloScalar.root(int(e), level)


def cyclo_invert(a):
    if isinstance(a, CycloScalar):
        return a.inverse()
    if a == 0:
        raise DivisionByZero("DivisionByZero")
    return 1 / Fraction(a)


def rational_part(a):
    """The rational value of ``a``; raises NotRational if ``a`` is not in Q."""
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    if a.is_rational():
        return a.coeffs[0]
    raise NotRational(f"NotRational: {a!r} has non-rational components")


def _level_of(x):
    return x.level if isinstance(x, CycloScalar) else 1


class TruncSeries:
    """Power series c_0 + c_1 U + ... + c_D U^D (all higher terms dropped)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least a constant term")

    @classmethod
    def zero(cls, D):
        return cls([Fraction(0)] * (D + 1))

    @classmethod
    def one(cls, D):
        return cls([Fraction(1)] + [Fraction(0)] * D)

    @classmethod
    def monomial(cls, c, r, D):
        out = cls.zero(D)
        if r <= D:
            out.coeffs[r] = c
        return out

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def level(self):
        levels = {_level_of(c) for c in self.coeffs} - {1}
        if len(levels) > 1:
            raise LevelError(f"LevelError: mixed levels {sorted(levels)}")
        return levels.pop() if levels else 1

    def __getitem__(self, r):
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other):
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        a, b = self.level, other.level
        if a != b and 1 not in (a, b):
            raise LevelError(f"LevelError: series levels {a} and {b} differ")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([self.coeffs[0] + other] + self.coeffs[1:])
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.coeffs])
        self._check(other)
        D = self.order
        out = []
        for r in range(D + 1):
            acc = Fraction(0)
            for i in range(r + 1):
                a, b = self.coeffs[i], other.coeffs[r - i]
                if a and b:
                    acc = a * b + acc
            out.append(acc)
        return TruncSeries(out)

    def __rmul__(self, other):
        return self * other

    def inverse(self):
        c0 = self.coeffs[0]
        if not c0:
            raise DivisionByZero("DivisionByZero: constant term vanishes")
        inv0 = cyclo_invert(c0)
        out = [inv0]
        for r in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, r + 1):
                a = self.coeffs[j]
                if a:
                    acc = a * out[r - j] + acc
            out.append(-(acc * inv0))
        return TruncSeries(out)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self * cyclo_invert(other)

    def scale_var(self, s):
        """Substitute U -> s U."""
        s = Fraction(s)
        return TruncSeries([c * s**r for r, c in enumerate(self.coeffs)])

    def to_level(self, level):
        return TruncSeries([c.embed(level) if isinstance(c, CycloScalar) else c for c in self.coeffs])

    def rational(self):
        return TruncSeries([rational_part(c) for c in self.coeffs])

    def truncate(self, D):
        return TruncSeries((self.coeffs + [Fraction(0)] * (D + 1))[: D + 1])

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"TruncSeries({self.coeffs!r})"


def series_mul(a, b):
    return a * b


def series_add(a, b):
    return a + b


def series_scale_var(a, s):
    return a.scale_var(s)


def exp_series(c, D):
    """e^{cU} with exact coefficients c^r / r!."""
    c = Fraction(c)
    return TruncSeries([c**r / math.factorial(r) for r in range(D + 1)])


@lru_cache(maxsize=4096)
def x_over_tanh(c, D):
    """(cU) / tanh(cU) = cU cosh(cU) / sinh(cU), an even series with constant term 1."""
    c = Fraction(c)
    if c == 0:
        return TruncSeries.one(D)
    cosh = TruncSeries([c**r / math.factorial(r) if r % 2 == 0 else Fraction(0) for r in range(D + 1)])
    # sinh(cU) / (cU)
    sinhc = TruncSeries([c**r / math.factorial(r + 1) if r % 2 == 0 else Fraction(0) for r in range(D + 1)])
    return cosh / sinhc


@lru_cache(maxsize=65536)
def coth_shift(gamma, c, D, level=None):
    """coth(pi i gamma + cU) = (lam e^{2cU} + 1) / (lam e^{2cU} - 1), lam = e^{2 pi i gamma}."""
    gamma = Fraction(gamma)
    if gamma.denominator == 1:
        raise PoleAtZero(f"PoleAtZero: gamma = {gamma} is an integer")
    lam = cyclo_embed(gamma, level)
    E = exp_series(2 * Fraction(c), D)
    return (E * lam + 1) / (E * lam - 1)

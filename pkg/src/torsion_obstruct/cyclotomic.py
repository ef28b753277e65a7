"""Exact arithmetic in the cyclotomic field Q(zeta_m).

An element is stored in the power basis ``1, z, ..., z^(phi(m)-1)`` of
``Z[z]/Phi_m(z)``, which makes the representation canonical: two elements
are equal iff their coefficient tuples are equal.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

Coeff = Union[int, Fraction]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]  # den is monic
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num), "cyclotomic division left a remainder"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_reductions(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k is z^k (0 <= k < m) written in the power basis."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(m):
        rows.append(tuple(cur))
        if deg == 0:
            continue
        # multiply by z and reduce with z^deg = -sum(phi[i] z^i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def phi_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """Element of Q(zeta_m); immutable and hashable."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs) -> None:
        d = phi_degree(m)
        c = tuple(coeffs)
        if len(c) != d:
            raise ValueError(f"expected {d} coefficients for conductor {m}, got {len(c)}")
        self.m = m
        self.coeffs = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "Cyclotomic":
        return cls(m, (0,) * phi_degree(m))

    @classmethod
    def rational(cls, m: int, q: Coeff) -> "Cyclotomic":
        d = phi_degree(m)
        return cls(m, (q,) + (0,) * (d - 1))

    @classmethod
    def root_of_unity(cls, m: int, k: int) -> "Cyclotomic":
        return cls(m, _power_reductions(m)[k % m])

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> "Cyclotomic":
        """``sum(counts[k] * z^k)`` for a mapping or sequence indexed by k."""
        items = counts.items() if hasattr(counts, "items") else enumerate(counts)
        red = _power_reductions(m)
        acc = [0] * phi_degree(m)
        for k, c in items:
            if c:
                row = red[k % m]
                for i, v in enumerate(row):
                    if v:
                        acc[i] += c * v
        return cls(m, acc)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic.rational(self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Cyclotomic(self.m, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        d = len(a)
        raw = [0] * (2 * d)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return Cyclotomic.from_exponent_counts(self.m, {k: v for k, v in enumerate(raw) if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Cyclotomic(self.m, [Fraction(a) / other for a in self.coeffs])
        return NotImplemented

    def exact_div(self, k: int) -> "Cyclotomic":
        """Divide by an integer, keeping integer coefficients (must divide exactly)."""
        out = []
        for a in self.coeffs:
            q, r = divmod(a, k)
            if r:
                raise ArithmeticError(f"{a} not divisible by {k}")
            out.append(q)
        return Cyclotomic(self.m, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        result = Cyclotomic.rational(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Apply z -> z^k (k coprime to m)."""
        if math.gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return Cyclotomic.from_exponent_counts(self.m, {(i * k) % self.m: c for i, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.m if self.m > 1 else 1)

    # -- queries ----------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Coeff:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self) -> complex:
        return sum(complex(c) * cmath.exp(2j * math.pi * i / self.m) for i, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclotomic({self.m}, {self.coeffs[0]})"
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.m}, {' + '.join(terms)})"

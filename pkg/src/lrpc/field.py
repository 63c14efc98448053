"""Arithmetic in F_q and in the extension field F_{q^m} over a polynomial basis.

Elements of F_{q^m} are plain Python ints: the coefficient vector
(c_0, ..., c_{m-1}) with respect to {1, a, ..., a^{m-1}} is stored as the
integer sum(c_i * q**i).  For q = 2 this is the usual bit-packed form and
addition is XOR.  :class:`FieldElement` wraps an int together with its field
for operator-style use; the decoder works on raw ints for speed.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomials over F_q as coefficient lists, low degree first, no trailing 0s

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % q
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    return poly_add(a, [(-c) % q for c in b], q)


def poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], q: int) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(a))
    inv_lead = pow(b[-1], q - 2, q)
    quo = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = (r[-1] * inv_lead) % q
        quo[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - c * y) % q
        _trim(r)
    return _trim(quo), r


def poly_gcd(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_divmod(a, b, q)[1]
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [(c * inv) % q for c in a]
    return a


def _poly_powmod(base: list[int], e: int, mod: Sequence[int], q: int) -> list[int]:
    result = [1]
    base = poly_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, q), mod, q)[1]
        e >>= 1
        if e:
            base = poly_divmod(poly_mul(base, base, q), mod, q)[1]
    return result


def is_irreducible(poly: Sequence[int], q: int) -> bool:
    """Ben-Or test: f of degree m is irreducible iff gcd(x^(q^i) - x, f) = 1 for i <= m/2."""
    f = _trim(list(poly))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(m // 2):
        h = _poly_powmod(h, q, f, q)
        g = poly_gcd(poly_sub(h, [0, 1], q), f, q)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(q: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree m over F_q.

    Candidates are ordered by their integer encoding sum(c_i q^i), so for
    q = 2, m = 3 this is x^3 + x + 1.
    """
    for low in range(q**m):
        coeffs = [(low // q**i) % q for i in range(m)] + [1]
        if is_irreducible(coeffs, q):
            return tuple(coeffs)
    raise ParameterError(f"no irreducible polynomial of degree {m} over F_{q}")  # pragma: no cover


# ---------------------------------------------------------------------------
# q = 2 helpers on bit-packed ints

def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _divmod2(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    quo = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        quo |= 1 << s
        a ^= b << s
    return quo, a


@dataclass(frozen=True)
class Field:
    """F_{q^m} = F_q[x] / (modulus).  ``modulus`` is low-to-high, length m + 1."""

    q: int
    m: int
    modulus: tuple[int, ...] | None = None
    _modint: int = dc_field(init=False, repr=False, compare=False)
    _top: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.q):
            raise ParameterError(f"q={self.q} is not prime")
        if self.m < 1:
            raise ParameterError("extension degree m must be >= 1")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.q, self.m))
        else:
            mod = tuple(int(c) % self.q for c in self.modulus)
            if len(mod) != self.m + 1 or mod[-1] == 0:
                raise ParameterError(f"modulus must have degree exactly {self.m}")
            if mod[-1] != 1:
                inv = pow(mod[-1], self.q - 2, self.q)
                mod = tuple((c * inv) % self.q for c in mod)
            if not is_irreducible(mod, self.q):
                raise ParameterError(f"modulus {mod} is reducible over F_{self.q}")
            object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "_modint", self.from_coeffs(self.modulus) if self.q == 2 else 0)
        object.__setattr__(self, "_top", 1 << self.m)

    @property
    def order(self) -> int:
        return self.q**self.m

    @property
    def generator(self) -> int:
        """The class of x, i.e. the polynomial-basis variable."""
        if self.m == 1:
            return (-self.modulus[0]) % self.q
        return self.q

    # -- representation ----------------------------------------------------
    def to_coeffs(self, a: int) -> tuple[int, ...]:
        q = self.q
        if q == 2:
            return tuple((a >> i) & 1 for i in range(self.m))
        out = []
        for _ in range(self.m):
            a, c = divmod(a, q)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        q = self.q
        v = 0
        for i, c in enumerate(coeffs):
            v += (int(c) % q) * q**i
        return v

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ParameterError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise ParameterError(f"{value} is not an element encoding of F_{self.q}^{self.m}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) != self.m:
            raise ParameterError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElement(self, self.from_coeffs(coeffs))

    # -- arithmetic on raw ints -------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.from_coeffs((x + y) for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        return self.from_coeffs(-x for x in self.to_coeffs(a))

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.from_coeffs((x - y) for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))

    def scale(self, c: int, a: int) -> int:
        """Multiply by the base-field scalar c."""
        c %= self.q
        if self.q == 2:
            return a if c else 0
        return self.from_coeffs(c * x for x in self.to_coeffs(a))

    def combine(self, coeffs: Iterable[int], elems: Sequence[int]) -> int:
        """sum_i coeffs[i] * elems[i] with coeffs in F_q."""
        if self.q == 2:
            r = 0
            for c, e in zip(coeffs, elems):
                if c & 1:
                    r ^= e
            return r
        acc = [0] * self.m
        for c, e in zip(coeffs, elems):
            if c % self.q:
                for i, x in enumerate(self.to_coeffs(e)):
                    acc[i] += c * x
        return self.from_coeffs(acc)

    def mul(self, a: int, b: int) -> int:
        if self.q == 2:
            if a < b:
                a, b = b, a
            top, mod = self._top, self._modint
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod
            return r
        prod = poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.q)
        return self.from_coeffs(poly_divmod(prod, self.modulus, self.q)[1])

    def inv(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm."""
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q^m")
        if self.q == 2:
            r0, r1 = self._modint, a
            s0, s1 = 0, 1
            while r1:
                quo, rem = _divmod2(r0, r1)
                r0, r1 = r1, rem
                s0, s1 = s1, s0 ^ clmul(quo, s1)
            return s0
        q = self.q
        r0, r1 = list(self.modulus), _trim(list(self.to_coeffs(a)))
        s0, s1 = [], [1]
        while r1:
            quo, rem = poly_divmod(r0, r1, q)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1, q), q)
        # r0 is a nonzero constant
        c = pow(r0[0], q - 2, q)
        s0 = poly_divmod([(x * c) % q for x in s0], self.modulus, q)[1]
        return self.from_coeffs(s0)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    # -- sampling ---------------------------------------------------------
    def random(self, rng: np.random.Generator) -> int:
        """Uniform element of F_{q^m}."""
        order = self.order
        if order <= 1 << 62:
            return int(rng.integers(order))
        return self.from_coeffs(rng.integers(0, self.q, size=self.m).tolist())

    def random_many(self, rng: np.random.Generator, count: int) -> list[int]:
        order = self.order
        if order <= 1 << 62:
            return rng.integers(order, size=count).tolist()
        return [self.random(rng) for _ in range(count)]

    def elements(self) -> range:
        return range(self.order)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{q^m} bound to its field, with arithmetic operators."""

    field: Field
    value: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ParameterError("operands belong to different fields")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) or "0"

"""Arithmetic in the prime field F_q and unbiased sampling of field elements.

Hot loops elsewhere in the package work on plain ``int`` residues; the
:class:`FieldElement` wrapper is the checked, user-facing form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

RandomSource = random.Random

# q must fit in 64 bits; beyond that the sampler's capacity guarantees lapse.
MAX_MODULUS = (1 << 64) - 1


class CapacityError(ValueError):
    """A parameter exceeds the sizes this implementation supports."""


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, exact for all m < 3.3e24."""
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def check_modulus(q: int) -> int:
    if not isinstance(q, int) or isinstance(q, bool):
        raise TypeError(f"modulus must be an int, got {type(q).__name__}")
    if q > MAX_MODULUS:
        raise CapacityError(f"q={q} does not fit in 64 bits")
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    return q


@dataclass(frozen=True)
class FieldParams:
    q: int

    def __post_init__(self):
        check_modulus(self.q)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.q)]


@dataclass(frozen=True)
class FieldElement:
    value: int
    params: FieldParams

    def __post_init__(self):
        if not 0 <= self.value < self.params.q:
            raise ValueError(f"{self.value} is not a residue mod {self.params.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.params.q != self.params.q:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.params.q
        return NotImplemented

    def _new(self, v: int) -> "FieldElement":
        return FieldElement(v % self.params.q, self.params)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * field_inv(self._new(o))

    def inverse(self) -> "FieldElement":
        return field_inv(self)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.params.q})"


def inv_mod(x: int, q: int) -> int:
    if x % q == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {q}")
    return pow(x, -1, q)


def field_inv(x: FieldElement) -> FieldElement:
    return FieldElement(inv_mod(x.value, x.params.q), x.params)


def randbelow(rng: RandomSource, k: int) -> int:
    """Uniform integer in [0, k) by rejection from the smallest power-of-two range >= k.

    Works for arbitrarily large ``k``; no modulo bias.
    """
    if k <= 0:
        raise ValueError("empty range")
    if k == 1:
        return 0
    bits = (k - 1).bit_length()
    getrandbits = rng.getrandbits
    r = getrandbits(bits)
    while r >= k:
        r = getrandbits(bits)
    return r


def sample_uniform(params: FieldParams, rng: RandomSource) -> FieldElement:
    return FieldElement(randbelow(rng, params.q), params)


def sample_nonzero(params: FieldParams, rng: RandomSource) -> FieldElement:
    return FieldElement(1 + randbelow(rng, params.q - 1), params)

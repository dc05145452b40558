"""Green polynomials Q^lam_(1^n)(q): point counts of unipotent Springer fibers.

Computed from the eigenline recursion

    Q^lam(q) = sum over mu in R(lam) of  (q^r - q^(r-m)) / (q - 1) * Q^mu(q),

which counts fixed flags by their first line: (q^r - q^(r-m))/(q-1) lines
leave a quotient of Jordan type mu, and each extends in Q^mu(q) ways.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .partitions import Partition, multiplicity, r_index, remove_box_set


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in q, coefficients in ascending degree."""

    coefficients: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial(tuple(-x for x in other.coefficients))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def divmod_linear(self, root: int) -> tuple:
        """Synthetic division by (q - root): returns (quotient, remainder)."""
        c = self.coefficients
        if not c:
            return IntPolynomial(()), 0
        quot = [0] * (len(c) - 1)
        acc = c[-1]
        for i in range(len(c) - 2, -1, -1):
            quot[i] = acc
            acc = c[i] + root * acc
        return IntPolynomial(tuple(quot)), acc

    def __call__(self, q: int) -> int:
        acc = 0
        for x in reversed(self.coefficients):
            acc = acc * q + x
        return acc

    def to_text(self, var: str = "q") -> str:
        """Descending-degree text such as ``2*q + 1``."""
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                power = var if d == 1 else f"{var}^{d}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"

    def __str__(self):
        return self.to_text()


_memo: dict = {}
_lock = threading.Lock()


def eigenline_factor(lam: Partition, mu: Partition) -> IntPolynomial:
    """(q^r - q^(r-m)) / (q - 1) as an exact polynomial."""
    r = r_index(lam, mu)
    m = multiplicity(lam, mu)
    numerator = IntPolynomial.monomial(r) - IntPolynomial.monomial(r - m)
    quot, rem = numerator.divmod_linear(1)
    if rem != 0:
        raise ArithmeticError(f"(q^{r} - q^{r - m}) not divisible by q - 1")
    return quot


def green(lam: Partition) -> IntPolynomial:
    if lam.n < 1:
        raise ValueError("green polynomial needs a nonempty partition")
    key = lam.parts
    cached = _memo.get(key)
    if cached is not None:
        return cached
    if lam.n == 1:
        poly = IntPolynomial((1,))
    else:
        poly = IntPolynomial(())
        for mu in remove_box_set(lam):
            poly = poly + eigenline_factor(lam, mu) * green(mu)
    with _lock:
        _memo.setdefault(key, poly)
    return poly


_eval_memo: dict = {}


def green_eval(lam: Partition, q: int) -> int:
    """|X_u| for a unipotent u of Jordan type lam over F_q."""
    key = (lam.parts, q)
    v = _eval_memo.get(key)
    if v is None:
        v = green(lam)(q)
        _eval_memo[key] = v
    return v


def poincare_polynomial(n: int) -> IntPolynomial:
    """sum over w in S_n of q^l(w), as the product of q-integers [1][2]...[n]."""
    poly = IntPolynomial((1,))
    for k in range(1, n + 1):
        poly = poly * IntPolynomial((1,) * k)
    return poly

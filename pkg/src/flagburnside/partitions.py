"""Young-diagram combinatorics used by the sampler and the limit analysis.

Partitions are indexed from 1 in the public statistics (``r_index``,
``block_starts``) to agree with the usual matrix-coordinate conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod


class InvalidPairError(ValueError):
    """The second partition is not obtained from the first by removing one box."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the CLI form ``"2,1,1"``."""
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return ",".join(map(str, self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def diagram(self) -> str:
        """ASCII Young diagram, English notation (longest row on top)."""
        return "\n".join("[]" * p for p in self.parts)


def partitions_of(n: int):
    """All partitions of ``n`` in reverse lexicographic order, starting at (n)."""

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return [Partition(p) for p in rec(n, n)]


def remove_box_set(lam: Partition) -> list:
    """R(lam): distinct partitions obtained by deleting one removable corner."""
    if lam.n < 1:
        raise ValueError("cannot remove a box from the empty partition")
    out = []
    parts = lam.parts
    for i, p in enumerate(parts):
        # a corner sits at the last row of each run of equal parts
        if i + 1 < len(parts) and parts[i + 1] == p:
            continue
        new = list(parts)
        new[i] -= 1
        out.append(Partition(tuple(x for x in new if x > 0)))
    return out


def r_index(lam: Partition, mu: Partition) -> int:
    """1-based index of the decremented part, maximal among equal parts."""
    if mu.n != lam.n - 1:
        raise InvalidPairError(f"{mu} is not {lam} minus one box")
    padded = mu.parts + (0,) * (len(lam) - len(mu))
    if len(padded) != len(lam):
        raise InvalidPairError(f"{mu} is not {lam} minus one box")
    diff = [i for i in range(len(lam)) if lam[i] != padded[i]]
    if len(diff) != 1 or lam[diff[0]] - padded[diff[0]] != 1:
        raise InvalidPairError(f"{mu} is not {lam} minus one box")
    i = diff[0]
    size = lam[i]
    while i + 1 < len(lam) and lam[i + 1] == size:
        i += 1
    return i + 1


def multiplicity(lam: Partition, mu: Partition) -> int:
    size = lam[r_index(lam, mu) - 1]
    return sum(1 for p in lam if p == size)


def block_starts(lam: Partition) -> list:
    """I(lam): 1-based positions where each Jordan block of J_lam begins."""
    starts, acc = [], 1
    for p in lam:
        starts.append(acc)
        acc += p
    return starts


def e_set_size(lam: Partition, mu: Partition, q: int) -> int:
    r = r_index(lam, mu)
    m = multiplicity(lam, mu)
    return q**r - q ** (r - m)


def b_stat(lam: Partition) -> int:
    return sum(i * p for i, p in enumerate(lam.parts))


def b_stat_conjugate(lam: Partition) -> int:
    """Same statistic as :func:`b_stat`, via column lengths."""
    return sum(comb(c, 2) for c in lam.conjugate().parts)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    if mu.n != lam.n:
        raise ValueError("dominance compares partitions of the same n")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def hook_lengths(lam: Partition) -> list:
    conj = lam.conjugate().parts
    return [[lam[i] - j + conj[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


@lru_cache(maxsize=None)
def _hook_count(parts: tuple) -> int:
    lam = Partition(parts)
    return factorial(lam.n) // prod(h for row in hook_lengths(lam) for h in row)


def hook_count(lam: Partition) -> int:
    """f^lam, the number of standard Young tableaux of shape lam."""
    return _hook_count(lam.parts)


def syt_enumerate(lam: Partition) -> list:
    """All standard Young tableaux of shape ``lam`` as tuples of row tuples.

    Built by placing n, n-1, ..., 1 in removable corners, so it does not rely
    on the hook-length formula.
    """
    from .rsk import Tableau

    def rec(shape):
        if not shape:
            return [[]]
        n = sum(shape)
        out = []
        for i, p in enumerate(shape):
            if i + 1 < len(shape) and shape[i + 1] == p:
                continue
            smaller = list(shape)
            smaller[i] -= 1
            if smaller[i] == 0:
                smaller.pop()
            for rows in rec(tuple(smaller)):
                rows = [list(r) for r in rows]
                if i == len(rows):
                    rows.append([n])
                else:
                    rows[i].append(n)
                out.append(rows)
        return out

    return [Tableau(tuple(tuple(r) for r in rows)) for rows in rec(lam.parts)]


def orbit_dim(lam: Partition) -> int:
    """Dimension of the nilpotent orbit of Jordan type lam."""
    return lam.n**2 - sum(c * c for c in lam.conjugate().parts)

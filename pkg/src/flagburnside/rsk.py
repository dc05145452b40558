"""Robinson-Schensted row insertion and the P-symbol classes of S_n."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache

from .partitions import Partition
from .perm import Permutation, all_permutations


class InvalidTableauError(ValueError):
    pass


@dataclass(frozen=True)
class Tableau:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_standard(self) -> bool:
        rows = self.rows
        if any(len(rows[i]) < len(rows[i + 1]) for i in range(len(rows) - 1)):
            return False
        if any(len(r) == 0 for r in rows):
            return False
        if sorted(x for r in rows for x in r) != list(range(1, self.n + 1)):
            return False
        for r in rows:
            if any(r[j] >= r[j + 1] for j in range(len(r) - 1)):
                return False
        for i in range(len(rows) - 1):
            if any(rows[i][j] >= rows[i + 1][j] for j in range(len(rows[i + 1]))):
                return False
        return True

    def to_json(self) -> list:
        return [list(r) for r in self.rows]

    def diagram(self) -> str:
        width = len(str(self.n))
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


def rsk(w: Permutation) -> tuple:
    """Insertion and recording tableaux (P(w), Q(w)) by Schensted row insertion."""
    P: list = []
    Q: list = []
    for step, x in enumerate(w.images, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            r = P[row]
            k = bisect.bisect_right(r, x)
            if k == len(r):
                r.append(x)
                Q[row].append(step)
                break
            x, r[k] = r[k], x
            row += 1
    return Tableau(tuple(map(tuple, P))), Tableau(tuple(map(tuple, Q)))


def shape_of(w: Permutation) -> Partition:
    """T(w), the common shape of P(w) and Q(w)."""
    return rsk(w)[0].shape


def rsk_inverse(P: Tableau, Q: Tableau) -> Permutation:
    if not (P.is_standard() and Q.is_standard()):
        raise InvalidTableauError("both tableaux must be standard")
    if P.shape != Q.shape:
        raise InvalidTableauError(f"shape mismatch: {P.shape} vs {Q.shape}")
    n = P.n
    rows = [list(r) for r in P.rows]
    where = {x: i for i, r in enumerate(Q.rows) for x in r}
    out = [0] * n
    for step in range(n, 0, -1):
        i = where[step]
        x = rows[i].pop()
        # reverse bumping: replace the largest entry smaller than x in the row above
        for j in range(i - 1, -1, -1):
            r = rows[j]
            k = bisect.bisect_left(r, x) - 1
            x, r[k] = r[k], x
        out[step - 1] = x
        if not rows[i]:
            rows.pop()
    return Permutation(tuple(out))


@lru_cache(maxsize=None)
def _p_classes(n: int) -> dict:
    classes: dict = {}
    for w in all_permutations(n):
        classes.setdefault(rsk(w)[0], []).append(w)
    return classes


def p_class(w: Permutation) -> list:
    """All z in S_n with P(z) = P(w), i.e. the type-A Steinberg cell of w.

    Generated from the recording tableaux of shape T(w) via the inverse map.
    """
    P = rsk(w)[0]
    from .partitions import syt_enumerate

    return sorted(rsk_inverse(P, Q) for Q in syt_enumerate(P.shape))


def p_classes(n: int) -> list:
    """Partition of S_n into P-symbol classes, each sorted, ordered by first element."""
    return sorted((sorted(c) for c in _p_classes(n).values()), key=lambda c: c[0])

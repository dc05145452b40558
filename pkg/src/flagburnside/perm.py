"""Permutations in one-line notation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n} stored as its one-line images (w(1), ..., w(n))."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accept ``"3214"``, ``"3 2 1 4"`` or ``"3,2,1,4"``."""
        text = text.strip()
        if "," in text or " " in text:
            tokens = text.replace(",", " ").split()
        else:
            tokens = list(text)
        return cls(tuple(int(t) for t in tokens))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            out[x - 1] = i
        return Permutation(tuple(out))

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other, i.e. apply ``other`` first."""
        return Permutation(tuple(self.images[x - 1] for x in other.images))

    def inversions(self) -> list:
        w = self.images
        n = len(w)
        return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if w[i] > w[j]]

    def length(self) -> int:
        w = self.images
        n = len(w)
        return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])

    def one_line(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def __str__(self):
        return self.one_line()


def all_permutations(n: int) -> list:
    """S_n in lexicographic order of one-line notation."""
    return [Permutation(p) for p in _permutations(range(1, n + 1))]

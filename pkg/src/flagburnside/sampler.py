"""The Burnside process for U acting on G/B, G = GL_n(F_q).

One step from a flag F:

1. draw a uniformly from stab_U(F) = u U_w u^-1, where F = u w B;
2. draw F' uniformly from the flags fixed by a.

Step 2 is the recursive Springer-fiber sampler. With a = Q J_lam Q^-1, a
uniform J_lam-fixed flag is built line by line: pick the Jordan type mu of
the quotient with probability proportional to
(q^r - q^(r-m)) * Q^mu(q), pick an eigenvector v uniformly among those whose
quotient has type mu, recurse on the induced operator on F^n / span(v), and
lift. Conjugating by Q turns this into a uniform a-fixed flag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .field import check_modulus, randbelow
from .greenpoly import green_eval
from .matfq import (
    CanonicalFlag,
    MatrixOverFq,
    _bruhat_u,
    _canonical,
    _jordan_data,
    _mul,
    _mat_vec,
    jordan_matrix,
    jordan_type_raw,
    stabilizer_positions,
)
from .partitions import Partition, block_starts, multiplicity, r_index, remove_box_set
from .perm import Permutation
from .rsk import rsk


# ---------------------------------------------------------------------------
# step 1: stabilizer


@lru_cache(maxsize=1 << 16)
def _conjugate_into_stabilizer(M: tuple, images: tuple, entries: tuple, q: int) -> tuple:
    """u s u^-1 where s in stab_U(P_w B) carries ``entries`` at its free cells."""
    n = len(images)
    u, uinv = _bruhat_u(M, images, q)
    s = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for (a, b), x in zip(stabilizer_positions(images), entries):
        s[a][b] = x
    return _mul(_mul(u, tuple(map(tuple, s)), q), uinv, q)


def _sample_stabilizer_raw(M: tuple, images: tuple, q: int, rng) -> tuple:
    entries = tuple(randbelow(rng, q) for _ in stabilizer_positions(images))
    return _conjugate_into_stabilizer(M, images, entries, q)


def sample_stabilizer(flag: CanonicalFlag, rng: random.Random) -> MatrixOverFq:
    """Uniform element of stab_U(flag), returned as a unipotent matrix."""
    return MatrixOverFq(_sample_stabilizer_raw(flag.raw, flag.w.images, flag.q, rng), flag.q)


# ---------------------------------------------------------------------------
# step 2: Springer fiber


@lru_cache(maxsize=None)
def _removal_table(parts: tuple, q: int) -> tuple:
    """For each mu in R(lam): (mu parts, r, m, weight), plus the total weight."""
    lam = Partition(parts)
    rows = []
    for mu in remove_box_set(lam):
        r = r_index(lam, mu)
        m = multiplicity(lam, mu)
        rows.append((mu.parts, r, m, (q**r - q ** (r - m)) * green_eval(mu, q)))
    return tuple(rows), sum(row[3] for row in rows)


@lru_cache(maxsize=None)
def _zero_based_starts(parts: tuple) -> tuple:
    return tuple(s - 1 for s in block_starts(Partition(parts)))


def _choose_removal(parts: tuple, q: int, rng) -> tuple:
    rows, total = _removal_table(parts, q)
    x = randbelow(rng, total)
    for row in rows:
        x -= row[3]
        if x < 0:
            return row
    raise AssertionError("weights exhausted")


def _sample_eigenvector_raw(parts: tuple, r: int, m: int, q: int, rng) -> tuple:
    starts = _zero_based_starts(parts)
    v = [0] * sum(parts)
    for idx in range(r - m):
        v[starts[idx]] = randbelow(rng, q)
    # uniform nonzero vector of F_q^m via its base-q digits
    code = 1 + randbelow(rng, q**m - 1)
    for idx in range(r - m, r):
        code, v[starts[idx]] = divmod(code, q)
    return tuple(v)


def sample_eigenvector(lam: Partition, mu: Partition, q: int, rng: random.Random) -> tuple:
    """Uniform element of E^mu(lam), as a coordinate tuple of length n."""
    return _sample_eigenvector_raw(lam.parts, r_index(lam, mu), multiplicity(lam, mu), q, rng)


@lru_cache(maxsize=1 << 16)
def _quotient(parts: tuple, v: tuple, q: int) -> tuple:
    """Jordan data of J_lam acting on F^n / span(v).

    The quotient is charted by the coordinates other than p, the last index
    where v is nonzero. Returns (p, Q', mu parts) with Q'^-1 Jbar Q' = J_mu.
    """
    J = jordan_matrix(parts)
    n = len(J)
    p = max(i for i in range(n) if v[i])
    scale = pow(v[p], -1, q)
    keep = [i for i in range(n) if i != p]
    cols = []
    for i in keep:
        y = [J[k][i] for k in range(n)]
        c = y[p] * scale % q
        if c:
            y = [(a - c * b) % q for a, b in zip(y, v)]
        cols.append(tuple(y[k] for k in keep))
    Jbar = tuple(zip(*cols))
    Q, mu = _jordan_data(Jbar, q)
    return p, Q, mu


def _draw_lines(parts: tuple, q: int, rng) -> tuple:
    """Random part of the recursion: the eigenvector chosen at each level."""
    vs = []
    while sum(parts) > 1:
        mu, r, m, _ = _choose_removal(parts, q, rng)
        v = _sample_eigenvector_raw(parts, r, m, q, rng)
        vs.append(v)
        parts = mu
    return tuple(vs)


@lru_cache(maxsize=1 << 16)
def _fixed_flag_columns(parts: tuple, vs: tuple, q: int) -> tuple:
    """Columns v_1..v_n of the J_parts-fixed flag determined by the line choices ``vs``.

    V_1 = span(vs[0]); the rest is the flag built from vs[1:] for the induced
    operator on the quotient, pulled back through the coordinate section that
    puts 0 at the dropped index.
    """
    if not vs:
        return ((1,),)
    v = vs[0]
    p, Qbar, mu = _quotient(parts, v, q)
    if sum(mu) != len(vs[1:]) + 1:
        raise AssertionError(f"quotient type {mu} does not match the remaining draws")
    out = [v]
    for c in _fixed_flag_columns(mu, vs[1:], q):
        z = _mat_vec(Qbar, c, q)
        out.append(z[:p] + (0,) + z[p:])
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _assemble(Q: tuple, parts: tuple, vs: tuple, q: int) -> tuple:
    basis = _mul(Q, tuple(zip(*_fixed_flag_columns(parts, vs, q))), q)
    return _canonical(basis, q)


def _sample_fixed_flag_raw(a: tuple, q: int, rng) -> tuple:
    Q, parts = _jordan_data(a, q)
    return _assemble(Q, parts, _draw_lines(parts, q, rng), q), parts


def sample_springer_fiber(a: MatrixOverFq, rng: random.Random) -> CanonicalFlag:
    """Uniform flag among those fixed by the unipotent matrix ``a``."""
    (M, images), _ = _sample_fixed_flag_raw(a.rows, a.q, rng)
    return CanonicalFlag._from_canonical(M, images, a.q)


# ---------------------------------------------------------------------------
# the chain


def _step_raw(M: tuple, images: tuple, q: int, rng, check: bool = False) -> tuple:
    a = _sample_stabilizer_raw(M, images, q, rng)
    (M2, images2), parts = _sample_fixed_flag_raw(a, q, rng)
    if check:
        for N in (M, M2):
            if _canonical(_mul(a, N, q), q)[0] != N:
                raise AssertionError("sampled stabilizer element does not fix the flag")
    return M2, images2, parts


def burnside_step(flag: CanonicalFlag, rng: random.Random, check: bool = False) -> CanonicalFlag:
    """One two-phase Burnside move. ``check`` verifies both fixed-point contracts."""
    M, images, _ = _step_raw(flag.raw, flag.w.images, flag.q, rng, check)
    return CanonicalFlag._from_canonical(M, images, flag.q)


@dataclass
class ChainConfig:
    n: int
    q: int
    seed: int = 0
    steps: int = 1000
    start: object = None  # Permutation, CanonicalFlag, or None for w0
    retain_flags: bool = False
    check: bool = False

    def __post_init__(self):
        check_modulus(self.q)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.start is None:
            self.start = Permutation.longest(self.n)
        if self.start.n != self.n:
            raise ValueError(f"start has size {self.start.n}, expected n={self.n}")

    def start_flag(self) -> CanonicalFlag:
        if isinstance(self.start, CanonicalFlag):
            if self.start.q != self.q:
                raise ValueError("start flag is over a different field")
            return self.start
        return CanonicalFlag.base_point(self.start, self.q)


@dataclass
class Trajectory:
    words: list
    jordan_types: list = field(default_factory=list)
    flags: list | None = None

    def histogram(self) -> dict:
        counts: dict = {}
        for w in self.words:
            counts[w] = counts.get(w, 0) + 1
        return counts


def run_chain(config: ChainConfig) -> Trajectory:
    """Run the chain; ``words`` holds the Bruhat cell of the start and of every step.

    ``jordan_types[i]`` is the type of the stabilizer element drawn at step i+1.
    """
    rng = random.Random(config.seed)
    q = config.q
    start = config.start_flag()
    M, images = start.raw, start.w.images
    words = [start.w]
    types = []
    flags = [start] if config.retain_flags else None
    perm_cache: dict = {images: start.w}
    for _ in range(config.steps):
        M, images, parts = _step_raw(M, images, q, rng, config.check)
        w = perm_cache.get(images)
        if w is None:
            w = perm_cache[images] = Permutation(images)
        words.append(w)
        types.append(parts)
        if flags is not None:
            flags.append(CanonicalFlag._from_canonical(M, images, q))
    return Trajectory(words, [Partition(t) for t in types], flags)


def one_step_counts(flag: CanonicalFlag, draws: int, seed: int) -> dict:
    """Counts of the next Bruhat cell over ``draws`` independent steps from ``flag``."""
    rng = random.Random(seed)
    M, images, q = flag.raw, flag.w.images, flag.q
    counts: dict = {}
    for _ in range(draws):
        _, images2, _ = _step_raw(M, images, q, rng)
        counts[images2] = counts.get(images2, 0) + 1
    return {Permutation(k): v for k, v in counts.items()}


# ---------------------------------------------------------------------------
# cell-size estimation


@dataclass
class CellSizeEstimate:
    estimate: float | None
    samples: int
    collisions: int
    distinct: int
    lower_bound: bool

    def __str__(self):
        if self.lower_bound:
            return f">= {self.distinct} (no collisions in {self.samples} samples)"
        return f"{self.estimate:.4g} ({self.collisions} collisions in {self.samples} samples)"


def estimate_cell_size(
    w: Permutation, q: int, samples: int, rng: random.Random | int = 0, burn_in: int = 0
) -> CellSizeEstimate:
    """Birthday estimate k(k-1)/(2 C) of |{z : P(z) = P(w)}| from chain samples.

    Only meaningful when q is large compared to n, so that the chain moves
    near-uniformly inside the starting cell. Samples leaving the starting
    P-class are discarded.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    check_modulus(q)
    target = rsk(w)[0]
    flag = CanonicalFlag.base_point(w, q)
    M, images = flag.raw, flag.w.images
    for _ in range(burn_in):
        M, images, _ = _step_raw(M, images, q, rng)
    counts: dict = {}
    kept = 0
    for _ in range(samples):
        M, images, _ = _step_raw(M, images, q, rng)
        z = Permutation(images)
        if rsk(z)[0] != target:
            continue
        counts[images] = counts.get(images, 0) + 1
        kept += 1
    collisions = sum(c * (c - 1) // 2 for c in counts.values())
    if collisions == 0:
        return CellSizeEstimate(None, kept, 0, len(counts), True)
    return CellSizeEstimate(kept * (kept - 1) / (2 * collisions), kept, collisions, len(counts), False)


def generic_type_fraction(w: Permutation, q: int, draws: int, seed: int = 0) -> float:
    """Fraction of stabilizer draws at P_w B whose Jordan type equals T(w)."""
    rng = random.Random(seed)
    shape = rsk(w)[0].shape.parts
    flag = CanonicalFlag.base_point(w, q)
    hits = 0
    for _ in range(draws):
        a = _sample_stabilizer_raw(flag.raw, flag.w.images, q, rng)
        hits += jordan_type_raw(a, q) == shape
    return hits / draws


__all__ = [
    "CellSizeEstimate",
    "ChainConfig",
    "Trajectory",
    "burnside_step",
    "estimate_cell_size",
    "generic_type_fraction",
    "one_step_counts",
    "run_chain",
    "sample_eigenvector",
    "sample_springer_fiber",
    "sample_stabilizer",
]

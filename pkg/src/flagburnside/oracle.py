"""Brute-force exact computations for small (n, q).

Everything here is computed from the definitions: flags are enumerated
cell by cell, fixed-point sets are found by scanning every flag, and the
transition kernel

    P(F, F') = 1/|stab_U(F)| * sum over g in stab_U(F) & stab_U(F') of 1/|Fix(g)|

is assembled in exact rationals. None of it calls the sampler or the Green
polynomial recursion, so it can be used to check both.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .field import CapacityError, check_modulus
from .matfq import CanonicalFlag, MatrixOverFq, _bruhat_u, fixes_flag
from .partitions import hook_count
from .perm import Permutation, all_permutations
from .rsk import p_classes, rsk

FLAG_LIMIT = 10**5


class EnumerationTooLarge(CapacityError):
    pass


class LumpabilityError(AssertionError):
    pass


def flag_count(n: int, q: int) -> int:
    return sum(q ** w.length() for w in all_permutations(n))


def _guard(n: int, q: int) -> None:
    check_modulus(q)
    if flag_count(n, q) > FLAG_LIMIT:
        raise EnumerationTooLarge(f"G/B for n={n}, q={q} has more than {FLAG_LIMIT} points")


# ---------------------------------------------------------------------------
# exact matrices


@dataclass
class ExactMatrix:
    labels: list
    entries: list  # list of rows of Fraction

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def index(self, label) -> int:
        return self.labels.index(label)

    def entry(self, row_label, col_label) -> Fraction:
        return self.entries[self.index(row_label)][self.index(col_label)]

    def row_sums(self) -> list:
        return [sum(row, Fraction(0)) for row in self.entries]

    def apply(self, v) -> list:
        """Right action P v."""
        return [sum((a * Fraction(x) for a, x in zip(row, v)), Fraction(0)) for row in self.entries]

    def left_apply(self, mu) -> list:
        """Left action mu P on a row vector."""
        d = self.dimension
        return [sum((Fraction(mu[i]) * self.entries[i][j] for i in range(d)), Fraction(0)) for j in range(d)]

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def to_json(self) -> dict:
        return {
            "labels": [str(x) for x in self.labels],
            "entries": [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        return cls(list(data["labels"]), [[Fraction(x) for x in row] for row in data["entries"]])


# ---------------------------------------------------------------------------
# enumeration and fixed points


def enumerate_flags(n: int, q: int) -> list:
    """Every point of G/B, grouped by Bruhat cell in lexicographic order of w."""
    _guard(n, q)
    flags = []
    for w in all_permutations(n):
        for entries in itertools.product(range(q), repeat=w.length()):
            flags.append(CanonicalFlag(w, entries, q))
    return flags


def enumerate_unipotent(n: int, q: int) -> list:
    """All of U as raw row tuples."""
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in itertools.product(range(q), repeat=len(cells)):
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), x in zip(cells, vals):
            m[i][j] = x
        out.append(tuple(map(tuple, m)))
    return out


def fixed_count(a: MatrixOverFq, n: int, q: int) -> int:
    """|Fix(a)| by scanning every flag."""
    if a.n_rows != n or a.q != q:
        raise ValueError("matrix does not match (n, q)")
    return sum(1 for f in enumerate_flags(n, q) if fixes_flag(a, f))


@dataclass
class FixedTable:
    """fixes[g, x] for every g in U and every flag x, plus bookkeeping."""

    n: int
    q: int
    flags: list
    unipotent: list
    fixes: np.ndarray
    cell_of: list = field(default_factory=list)
    cells: list = field(default_factory=list)

    @property
    def fix_sizes(self) -> np.ndarray:
        return self.fixes.sum(axis=1)


@lru_cache(maxsize=8)
def fixed_table(n: int, q: int) -> FixedTable:
    """Scan all (g, flag) pairs: g fixes F = M B iff M^-1 g M is upper triangular."""
    flags = enumerate_flags(n, q)
    U = enumerate_unipotent(n, q)
    Ms = np.array([f.raw for f in flags], dtype=np.int64)
    Minv = np.array([_inverse_flag(f) for f in flags], dtype=np.int64)
    lower = np.tril(np.ones((n, n), dtype=bool), k=-1)
    fixes = np.zeros((len(U), len(flags)), dtype=bool)
    for gi, g in enumerate(U):
        G = np.array(g, dtype=np.int64)
        T = np.matmul(Minv, np.matmul(G, Ms) % q) % q
        fixes[gi] = ~np.any(T[:, lower], axis=1)
    cells = all_permutations(n)
    index = {w: i for i, w in enumerate(cells)}
    return FixedTable(n, q, flags, U, fixes, [index[f.w] for f in flags], cells)


def _inverse_flag(f: CanonicalFlag) -> tuple:
    # M = u P_w, so M^-1 = P_w^-1 u^-1 = rows of u^-1 permuted by w
    _, uinv = _bruhat_u(f.raw, f.w.images, f.q)
    return tuple(uinv[wj - 1] for wj in f.w.images)


# ---------------------------------------------------------------------------
# transition kernels


def exact_transition(n: int, q: int) -> ExactMatrix:
    """Flag-level kernel, rows and columns in :func:`enumerate_flags` order."""
    T = fixed_table(n, q)
    A = T.fixes.astype(np.int64)
    sizes = T.fix_sizes
    stab_sizes = A.sum(axis=0)
    F = len(T.flags)
    # group stabilizer elements by |Fix(g)| so each block is an integer matmul
    acc = [[Fraction(0)] * F for _ in range(F)]
    for c in sorted(set(int(s) for s in sizes)):
        block = A[sizes == c]
        counts = block.T @ block
        for x in range(F):
            row = acc[x]
            cx = counts[x]
            for y in np.nonzero(cx)[0]:
                row[y] += Fraction(int(cx[y]), c)
    entries = [[v / int(stab_sizes[x]) for v in acc[x]] for x in range(F)]
    return ExactMatrix(list(T.flags), entries)


def stationary_flag_weights(n: int, q: int, flags: list) -> list:
    """pi(x) = 1 / (n! |O_x|), with |O_x| = q^l(w)."""
    nf = math.factorial(n)
    return [Fraction(1, nf * q ** f.w.length()) for f in flags]


def lump(P_flags: ExactMatrix, n: int, q: int) -> ExactMatrix:
    """Kernel on S_n; raises if two flags in the same cell lump differently."""
    cells = all_permutations(n)
    index = {w: i for i, w in enumerate(cells)}
    cell_of = [index[f.w] for f in P_flags.labels]
    rows: dict = {}
    for x, row in enumerate(P_flags.entries):
        lumped = [Fraction(0)] * len(cells)
        for y, p in enumerate(row):
            if p:
                lumped[cell_of[y]] += p
        c = cell_of[x]
        if c in rows:
            if rows[c] != lumped:
                raise LumpabilityError(f"rows in cell {cells[c]} disagree after lumping")
        else:
            rows[c] = lumped
    return ExactMatrix(cells, [rows[i] for i in range(len(cells))])


def lumped_transition(n: int, q: int) -> ExactMatrix:
    """P_{S_n} from the base point P_w B of each cell only.

    Skips the full flag-level matrix; use :func:`lump` when lumpability itself
    needs checking.
    """
    T = fixed_table(n, q)
    A = T.fixes.astype(np.int64)
    sizes = T.fix_sizes
    ncell = len(T.cells)
    indicator = np.zeros((len(T.flags), ncell), dtype=np.int64)
    indicator[np.arange(len(T.flags)), T.cell_of] = 1
    per_cell = A @ indicator  # |Fix(g) & cell z|
    base = {}
    for x, f in enumerate(T.flags):
        if not any(f.free_entries) and f.w not in base:
            base[f.w] = x
    entries = []
    for w in T.cells:
        x = base[w]
        gs = np.nonzero(A[:, x])[0]
        row = [Fraction(0)] * ncell
        for g in gs:
            s = int(sizes[g])
            for z in np.nonzero(per_cell[g])[0]:
                row[z] += Fraction(int(per_cell[g, z]), s)
        entries.append([v / len(gs) for v in row])
    return ExactMatrix(list(T.cells), entries)


def is_reversible(P: ExactMatrix, pi: list) -> bool:
    d = P.dimension
    E = P.entries
    return all(pi[x] * E[x][y] == pi[y] * E[y][x] for x in range(d) for y in range(x + 1, d))


def mallows_row(n: int, q: int) -> list:
    total = sum(q ** w.length() for w in all_permutations(n))
    return [Fraction(q ** w.length(), total) for w in all_permutations(n)]


# ---------------------------------------------------------------------------
# golden fixture: the GL_3 matrix as rational functions of q


GL3_ORDER = ["123", "213", "132", "231", "312", "321"]
GL3_NAMES = {"123": "e", "213": "s1", "132": "s2", "231": "s2s1", "312": "s1s2", "321": "w0"}


def load_gl3_fixture() -> dict:
    text = resources.files("flagburnside.data").joinpath("gl3_matrix.json").read_text()
    return json.loads(text)


def _poly(coeffs, q) -> int:
    return sum(c * q**i for i, c in enumerate(coeffs))


def gl3_fixture_matrix(q: int) -> ExactMatrix:
    data = load_gl3_fixture()
    entries = []
    for r in GL3_ORDER:
        row = []
        for c in GL3_ORDER:
            e = data["entries"][f"{r},{c}"]
            row.append(Fraction(_poly(e["numerator"], q), _poly(e["denominator"], q)))
        entries.append(row)
    return ExactMatrix([Permutation.parse(x) for x in GL3_ORDER], entries)


def reorder(P: ExactMatrix, order: list) -> ExactMatrix:
    idx = [P.index(x) for x in order]
    return ExactMatrix(list(order), [[P.entries[i][j] for j in idx] for i in idx])


def check_gl3(q: int, flag_level: bool = True) -> dict:
    """Compare the brute-force lumped kernel at n=3 with the fixture, entrywise."""
    order = [Permutation.parse(x) for x in GL3_ORDER]
    P = lump(exact_transition(3, q), 3, q) if flag_level else lumped_transition(3, q)
    P = reorder(P, order)
    expected = gl3_fixture_matrix(q)
    mismatches = [
        (str(order[i]), str(order[j]), str(P.entries[i][j]), str(expected.entries[i][j]))
        for i in range(6)
        for j in range(6)
        if P.entries[i][j] != expected.entries[i][j]
    ]
    return {"q": q, "passed": not mismatches, "mismatches": mismatches, "matrix": P}


# ---------------------------------------------------------------------------
# spectrum


def charpoly(P: ExactMatrix) -> list:
    """Characteristic polynomial det(xI - P), ascending Fraction coefficients.

    Faddeev-LeVerrier; exact over the rationals.
    """
    d = P.dimension
    A = [row[:] for row in P.entries]
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    M = [[Fraction(0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        # M_k = A M_{k-1} + c_{d-k+1} I
        AM = [[sum((A[i][t] * M[t][j] for t in range(d)), Fraction(0)) for j in range(d)] for i in range(d)]
        for i in range(d):
            AM[i][i] += coeffs[d - k + 1]
        M = AM
        AMk = [[sum((A[i][t] * M[t][j] for t in range(d)), Fraction(0)) for j in range(d)] for i in range(d)]
        coeffs[d - k] = -sum((AMk[i][i] for i in range(d)), Fraction(0)) / k
    return coeffs


def poly_divmod(num: list, den: list) -> tuple:
    """Polynomial long division over Q, ascending coefficients."""
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in den]
    while den and den[-1] == 0:
        den.pop()
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    rem = num[:]
    for k in range(len(num) - len(den), -1, -1):
        c = rem[k + len(den) - 1] / den[-1]
        quot[k] = c
        for i, x in enumerate(den):
            rem[k + i] -= c * x
    rem = rem[: len(den) - 1]
    return quot, rem


def poly_eval(coeffs: list, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


SECOND_EIGENVECTOR = (0, 1, -1, 1, -1, 0)
NULL_EIGENVECTOR = (0, 1, -1, -1, 1, 0)
CUBIC_AT_2 = (-2, 50, -315, 525)


@dataclass
class SpectrumReport:
    q: int
    second_eigenvalue: Fraction
    checks: dict
    charpoly: list
    numeric_eigenvalues: list
    max_residual: float

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def spectrum_checks(P: ExactMatrix, q: int) -> SpectrumReport:
    """Exact checks of the n=3 eigen-data; P must be labeled by S_3."""
    P = reorder(P, [Permutation.parse(x) for x in GL3_ORDER])
    beta = Fraction(2 * q - 2, 2 * q + 1)
    checks = {
        "second_eigenpair": P.apply(SECOND_EIGENVECTOR) == [beta * x for x in SECOND_EIGENVECTOR],
        "null_eigenpair": P.apply(NULL_EIGENVECTOR) == [Fraction(0)] * 6,
        "constant_eigenpair": P.apply([1] * 6) == [Fraction(1)] * 6,
    }
    cp = charpoly(P)
    checks["charpoly_root_beta"] = poly_eval(cp, beta) == 0
    if q == 2:
        _, rem = poly_divmod(cp, list(CUBIC_AT_2))
        checks["cubic_divides_charpoly"] = all(r == 0 for r in rem)
        for root in (Fraction(0), Fraction(1), Fraction(2, 5)):
            checks[f"root_{root}"] = poly_eval(cp, root) == 0
    F = P.to_float()
    vals, vecs = np.linalg.eig(F)
    residual = float(np.max(np.abs(F @ vecs - vecs * vals))) if len(vals) else 0.0
    checks["numeric_residual_below_1e-9"] = residual < 1e-9
    numeric = sorted(float(v.real) for v in vals)
    return SpectrumReport(q, beta, checks, cp, numeric, residual)


# ---------------------------------------------------------------------------
# total variation


def power_rows(P: ExactMatrix, start, l_max: int) -> list:
    """K^l(start, .) for l = 1..l_max."""
    i = P.index(start)
    d = P.dimension
    mu = [Fraction(int(j == i)) for j in range(d)]
    out = []
    for _ in range(l_max):
        mu = P.left_apply(mu)
        out.append(mu)
    return out


def tv_curve(P: ExactMatrix, start, l_max: int, half: bool = False) -> list:
    """sum_w |K^l(start, w) - 1/d| for l = 1..l_max, exact.

    ``half=True`` gives the conventional total variation (half the L1 sum).
    """
    d = P.dimension
    u = Fraction(1, d)
    out = []
    for row in power_rows(P, start, l_max):
        s = sum((abs(x - u) for x in row), Fraction(0))
        out.append(s / 2 if half else s)
    return out


def gl3_tv_bounds_hold(q: int, start: Permutation, l_max: int = 50, P: ExactMatrix | None = None) -> dict:
    """(1/2) beta^l <= TV(l) <= sqrt(3/2) beta^l with the displayed L1 sum, exactly.

    The square-root side is compared after squaring both nonnegative sides.
    """
    if P is None:
        P = lumped_transition(3, q)
    beta = Fraction(2 * q - 2, 2 * q + 1)
    curve = tv_curve(P, start, l_max)
    lower_ok, upper_ok = [], []
    for l, tv in enumerate(curve, start=1):
        b = beta**l
        lower_ok.append(b / 2 <= tv)
        upper_ok.append(tv * tv <= Fraction(3, 2) * b * b)
    return {
        "q": q,
        "start": str(start),
        "lower": all(lower_ok),
        "upper": all(upper_ok),
        "first_lower_failure": next((l + 1 for l, ok in enumerate(lower_ok) if not ok), None),
        "first_upper_failure": next((l + 1 for l, ok in enumerate(upper_ok) if not ok), None),
        "curve": curve,
    }


# ---------------------------------------------------------------------------
# conductance and the q -> infinity limit


@dataclass
class ConductanceReport:
    cell_phi: dict  # str(first element) -> Fraction
    phi: Fraction
    epsilon: float
    mixing_lower_bound: float


def conductance_bound(P: ExactMatrix, cells: list | None = None, epsilon: float = 0.25) -> ConductanceReport:
    """Phi(S) = Q(S, S^c) / pi(S) per cell under uniform pi; min over cells with pi(S) <= 1/2."""
    d = P.dimension
    if cells is None:
        n = P.labels[0].n
        cells = p_classes(n)
    phis = {}
    for S in cells:
        idx = [P.index(w) for w in S]
        inside = set(idx)
        flow = sum(
            (P.entries[i][j] for i in idx for j in range(d) if j not in inside), Fraction(0)
        ) / d
        pi_S = Fraction(len(idx), d)
        if pi_S <= Fraction(1, 2):
            phis[",".join(map(str, S))] = flow / pi_S
    phi = min(phis.values())
    bound = math.log(1 / (2 * epsilon)) / (2 * float(phi)) if phi else math.inf
    return ConductanceReport(phis, phi, epsilon, bound)


def limit_matrix(n: int) -> ExactMatrix:
    """(1/f^lambda) [P(w) = P(z)], the q -> infinity kernel."""
    perms = all_permutations(n)
    P_of = {w: rsk(w)[0] for w in perms}
    entries = [
        [Fraction(1, hook_count(P_of[w].shape)) if P_of[w] == P_of[z] else Fraction(0) for z in perms]
        for w in perms
    ]
    return ExactMatrix(perms, entries)


@dataclass
class LimitReport:
    qs: list
    max_deviation: list  # max |P - limit| per q
    max_off_class: list  # max over P(w) != P(z) of P(w, z)
    fitted_c: float
    ratio_spread: float  # max(q m(q)) / min(q m(q))

    @property
    def within_factor_two(self) -> bool:
        return self.ratio_spread <= 4.0


def limit_matrix_check(q_list, n: int = 3) -> LimitReport:
    L = limit_matrix(n)
    devs, offs = [], []
    for q in q_list:
        P = lumped_transition(n, q)
        P = reorder(P, L.labels)
        devs.append(max(abs(P.entries[i][j] - L.entries[i][j]) for i in range(L.dimension) for j in range(L.dimension)))
        offs.append(
            max(P.entries[i][j] for i in range(L.dimension) for j in range(L.dimension) if L.entries[i][j] == 0)
        )
    scaled = [float(m) * q for m, q in zip(offs, q_list)]
    c = math.sqrt(max(scaled) * min(scaled))
    return LimitReport(list(q_list), devs, offs, c, max(scaled) / min(scaled))


__all__ = [
    "ConductanceReport",
    "EnumerationTooLarge",
    "ExactMatrix",
    "LimitReport",
    "LumpabilityError",
    "SpectrumReport",
    "charpoly",
    "check_gl3",
    "conductance_bound",
    "enumerate_flags",
    "exact_transition",
    "fixed_count",
    "fixed_table",
    "gl3_fixture_matrix",
    "gl3_tv_bounds_hold",
    "is_reversible",
    "limit_matrix",
    "limit_matrix_check",
    "lump",
    "lumped_transition",
    "mallows_row",
    "spectrum_checks",
    "stationary_flag_weights",
    "tv_curve",
]

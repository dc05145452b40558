"""Matrices over F_q, Schubert-cell charts of G/B, and unipotent Jordan data.

Matrices are tuples of row tuples of residues in [0, q). The module-level
underscore functions operate on that raw form and are what the sampler's
inner loop calls; :class:`MatrixOverFq` is the checked wrapper.

Flags are cosets gB. Right multiplication by B performs column operations
(scale a column, add a multiple of an earlier column to a later one), so each
coset has a unique column-echelon representative: every column's bottommost
nonzero entry is a 1, and each such pivot row is zero in all later columns.
The permutation w records the pivot rows, w(j) = pivot row of column j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import check_modulus, inv_mod
from .partitions import Partition
from .perm import Permutation


class SingularMatrixError(ArithmeticError):
    pass


class NotUnipotentError(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw tuple kernels


def _identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mul(A: tuple, B: tuple, q: int) -> tuple:
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in Bt) for row in A)


def _mat_vec(A: tuple, v, q: int) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) % q for row in A)


def _sub_identity(A: tuple, q: int) -> tuple:
    return tuple(tuple((x - (i == j)) % q for j, x in enumerate(row)) for i, row in enumerate(A))


def _rref(A: tuple, q: int) -> tuple:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in A]
    n_rows = len(M)
    n_cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pr = next((i for i in range(r, n_rows) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = inv_mod(M[r][c], q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(n_rows):
            if i != r and M[i][c]:
                f = M[i][c]
                Mr = M[r]
                M[i] = [(x - f * y) % q for x, y in zip(M[i], Mr)]
        pivots.append(c)
        r += 1
    return M, pivots


def _rank(A: tuple, q: int) -> int:
    if not A or not A[0]:
        return 0
    return len(_rref(A, q)[1])


def _inverse(A: tuple, q: int) -> tuple:
    n = len(A)
    aug = tuple(tuple(row) + tuple(1 if i == j else 0 for j in range(n)) for i, row in enumerate(A))
    M, pivots = _rref(aug, q)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in M)


def _nullspace(A: tuple, q: int) -> list:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    n_cols = len(A[0])
    M, pivots = _rref(A, q)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n_cols
        x[f] = 1
        for row, pc in zip(M, pivots):
            x[pc] = -row[f] % q
        basis.append(tuple(x))
    return basis


def _power(A: tuple, k: int, q: int) -> tuple:
    R = _identity(len(A))
    for _ in range(k):
        R = _mul(R, A, q)
    return R


class _Span:
    """Incrementally maintained echelon basis for independence tests."""

    def __init__(self, q: int):
        self.q = q
        self.rows: list = []  # (pivot index, normalised vector)

    def reduce(self, v) -> list:
        q = self.q
        v = list(v)
        for p, r in self.rows:
            c = v[p]
            if c:
                v = [(x - c * y) % q for x, y in zip(v, r)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = inv_mod(v[p], self.q)
        self.rows.append((p, [x * inv % self.q for x in v]))
        return True

    def __len__(self):
        return len(self.rows)


@lru_cache(maxsize=1 << 16)
def _canonical(g: tuple, q: int) -> tuple:
    """Canonical column-echelon representative of gB: (matrix, w images 1-based)."""
    n = len(g)
    cols = [list(c) for c in zip(*g)]
    pivot_rows: list = []
    for j in range(n):
        col = cols[j]
        for k, r in enumerate(pivot_rows):
            c = col[r]
            if c:
                ck = cols[k]
                col = [(x - c * y) % q for x, y in zip(col, ck)]
        r = next((i for i in range(n - 1, -1, -1) if col[i]), None)
        if r is None:
            raise SingularMatrixError("matrix is not invertible")
        if col[r] != 1:
            inv = inv_mod(col[r], q)
            col = [x * inv % q for x in col]
        cols[j] = col
        pivot_rows.append(r)
    M = tuple(zip(*cols))
    return M, tuple(r + 1 for r in pivot_rows)


def free_positions(w) -> list:
    """0-based (row, col) cells of the Schubert chart for w, column by column."""
    images = w.images if isinstance(w, Permutation) else tuple(w)
    out = []
    used = set()
    for j, wj in enumerate(images):
        for i in range(wj - 1):
            if i not in used:
                out.append((i, j))
        used.add(wj - 1)
    return out


@lru_cache(maxsize=None)
def _free_positions(images: tuple) -> tuple:
    return tuple(free_positions(images))


@lru_cache(maxsize=None)
def stabilizer_positions(images: tuple) -> tuple:
    """0-based strictly-upper cells left free in stab_U(wB).

    u fixes the base point wB iff w^-1 u w is upper triangular, which forces
    u[a][b] = 0 whenever a < b and w^-1(a) > w^-1(b).
    """
    n = len(images)
    winv = [0] * n
    for j, wj in enumerate(images):
        winv[wj - 1] = j
    return tuple((a, b) for a in range(n) for b in range(a + 1, n) if winv[a] < winv[b])


def _perm_matrix(images: tuple) -> tuple:
    n = len(images)
    return tuple(tuple(1 if images[j] == i + 1 else 0 for j in range(n)) for i in range(n))


@lru_cache(maxsize=1 << 16)
def _bruhat_u(M: tuple, images: tuple, q: int) -> tuple:
    """(u, u^-1) with M = u P_w, read off by u[:, w(j)] = M[:, j]."""
    n = len(M)
    u = [[0] * n for _ in range(n)]
    for j, wj in enumerate(images):
        for i in range(n):
            u[i][wj - 1] = M[i][j]
    u = tuple(map(tuple, u))
    return u, _inverse(u, q)


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class MatrixOverFq:
    rows: tuple
    q: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.q for x in r) for r in self.rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, q: int) -> "MatrixOverFq":
        return cls(_identity(n), q)

    @classmethod
    def permutation(cls, w: Permutation, q: int) -> "MatrixOverFq":
        """P_w with P_w e_j = e_{w(j)}."""
        return cls(_perm_matrix(w.images), q)

    @classmethod
    def jordan(cls, lam: Partition, q: int) -> "MatrixOverFq":
        return cls(jordan_matrix(lam.parts), q)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "MatrixOverFq") -> "MatrixOverFq":
        if self.q != other.q:
            raise ValueError("matrices over different fields")
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        return MatrixOverFq(_mul(self.rows, other.rows, self.q), self.q)

    def __sub__(self, other: "MatrixOverFq") -> "MatrixOverFq":
        return MatrixOverFq(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.q
        )

    def inverse(self) -> "MatrixOverFq":
        return MatrixOverFq(_inverse(self.rows, self.q), self.q)

    def rank(self) -> int:
        return rank(self)

    def is_upper_unitriangular(self) -> bool:
        n = self.n_rows
        return all(self.rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(i + 1))

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n_rows) for j in range(i))

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def rank(m: MatrixOverFq) -> int:
    return _rank(m.rows, m.q)


@dataclass(frozen=True)
class CanonicalFlag:
    """A point of G/B as its Schubert cell w and the ell(w) free chart entries.

    ``free_entries`` lists values at :func:`free_positions` order.
    """

    w: Permutation
    free_entries: tuple
    q: int

    def __post_init__(self):
        if len(self.free_entries) != self.w.length():
            raise ValueError(f"cell {self.w} has {self.w.length()} free entries")

    @classmethod
    def base_point(cls, w: Permutation, q: int) -> "CanonicalFlag":
        """The flag P_w B (all free entries zero)."""
        return cls(w, (0,) * w.length(), q)

    @classmethod
    def _from_canonical(cls, M: tuple, images: tuple, q: int) -> "CanonicalFlag":
        flag = cls(Permutation(images), tuple(M[i][j] for i, j in _free_positions(images)), q)
        object.__setattr__(flag, "_matrix", M)
        return flag

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def raw(self) -> tuple:
        """Canonical matrix as row tuples."""
        M = self.__dict__.get("_matrix")
        if M is None:
            images = self.w.images
            n = len(images)
            rows = [[0] * n for _ in range(n)]
            for j, wj in enumerate(images):
                rows[wj - 1][j] = 1
            for (i, j), x in zip(_free_positions(images), self.free_entries):
                rows[i][j] = x % self.q
            M = tuple(map(tuple, rows))
            object.__setattr__(self, "_matrix", M)
        return M

    @property
    def matrix(self) -> MatrixOverFq:
        return MatrixOverFq(self.raw, self.q)

    def positions(self) -> dict:
        """Free entries keyed by 1-based (row, column)."""
        return {
            (i + 1, j + 1): x for (i, j), x in zip(_free_positions(self.w.images), self.free_entries)
        }


def canonicalize(g: MatrixOverFq) -> CanonicalFlag:
    if g.n_rows != g.n_cols:
        raise ValueError("flag representatives must be square")
    check_modulus(g.q)
    M, images = _canonical(g.rows, g.q)
    return CanonicalFlag._from_canonical(M, images, g.q)


def bruhat_uw(flag: CanonicalFlag) -> tuple:
    """(u, w) with u unipotent upper triangular and u P_w B = flag."""
    u, _ = _bruhat_u(flag.raw, flag.w.images, flag.q)
    return MatrixOverFq(u, flag.q), flag.w


def _in_base_stabilizer(h: tuple, images: tuple) -> bool:
    n = len(h)
    allowed = set(stabilizer_positions(images))
    for a in range(n):
        if h[a][a] != 1:
            return False
        for b in range(n):
            if b < a and h[a][b]:
                return False
            if b > a and h[a][b] and (a, b) not in allowed:
                return False
    return True


def stabilizer_membership(u: MatrixOverFq, w: Permutation, g: MatrixOverFq) -> bool:
    """Whether g in U fixes the flag u P_w B, i.e. u^-1 g u lies in stab_U(P_w B)."""
    q = u.q
    uinv = _inverse(u.rows, q)
    h = _mul(_mul(uinv, g.rows, q), u.rows, q)
    return _in_base_stabilizer(h, w.images)


def fixes_flag(g: MatrixOverFq, flag: CanonicalFlag) -> bool:
    """Direct check g V_k = V_k via canonical forms."""
    return _canonical(_mul(g.rows, flag.raw, flag.q), flag.q)[0] == flag.raw


# ---------------------------------------------------------------------------
# Jordan data


@lru_cache(maxsize=None)
def jordan_matrix(parts: tuple) -> tuple:
    """J_lam: upper-triangular unipotent Jordan blocks, sizes in the given order."""
    n = sum(parts)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    start = 0
    for p in parts:
        for t in range(1, p):
            rows[start + t - 1][start + t] = 1
        start += p
    return tuple(map(tuple, rows))


@dataclass(frozen=True)
class JordanData:
    conjugator: MatrixOverFq
    jordan_type: Partition


def jordan_type_raw(a: tuple, q: int) -> tuple:
    """Jordan type of a unipotent matrix from the rank sequence of a - I."""
    n = len(a)
    N = _sub_identity(a, q)
    ranks = [n]
    P = _identity(n)
    while ranks[-1] > 0:
        if len(ranks) > n:
            raise NotUnipotentError("a - I is not nilpotent")
        P = _mul(P, N, q)
        ranks.append(_rank(P, q))
        if ranks[-1] == ranks[-2]:
            raise NotUnipotentError("a - I is not nilpotent")
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exact)
    return tuple(parts)


@lru_cache(maxsize=1 << 16)
def _jordan_data(a: tuple, q: int) -> tuple:
    """(Q, parts) with Q^-1 a Q = J_parts, blocks non-increasing.

    Chains are built top-down: for each height k from the largest block down,
    new chain tops are taken from a fixed basis of ker N^k, skipping vectors
    already in ker N^(k-1) + N^(h-k)(tops of height h > k).
    """
    n = len(a)
    parts = jordan_type_raw(a, q)
    N = _sub_identity(a, q)
    if not parts:
        return _identity(n), ()
    height = parts[0]
    powers = [_identity(n)]
    for _ in range(height):
        powers.append(_mul(powers[-1], N, q))
    tops: list = []  # (k, x)
    for k in range(height, 0, -1):
        need = parts.count(k)
        if need == 0:
            continue
        span = _Span(q)
        for v in _nullspace(powers[k - 1], q) if k > 1 else []:
            span.add(v)
        for h, y in tops:
            span.add(_mat_vec(powers[h - k], y, q))
        found = 0
        for cand in _nullspace(powers[k], q):
            if span.add(cand):
                tops.append((k, cand))
                found += 1
                if found == need:
                    break
        if found != need:
            raise ArithmeticError("failed to complete Jordan chains")
    cols = []
    for k, x in tops:
        for t in range(k - 1, -1, -1):
            cols.append(_mat_vec(powers[t], x, q))
    Q = tuple(zip(*cols))
    return Q, parts


def jordan_data(a: MatrixOverFq) -> JordanData:
    if a.n_rows != a.n_cols:
        raise ValueError("jordan_data needs a square matrix")
    Q, parts = _jordan_data(a.rows, a.q)
    return JordanData(MatrixOverFq(Q, a.q), Partition(parts))

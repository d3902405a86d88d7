"""Dense exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``.  Elimination is done by a numba kernel that postpones the
modular reduction of non-pivot rows, which keeps the inner loop a plain
multiply-add.
"""

from __future__ import annotations

import numba
import numpy as np

DEFAULT_PRIME = 32003

# Lazy reduction accumulates up to rank * p**2 in a single int64 entry.
MAX_PRIME = 65521


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or p > MAX_PRIME:
        raise ValueError(f"prime must lie in [2, {MAX_PRIME}], got {p}")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


def as_matrix(m, p: int, shape=None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p through float64 BLAS.

    Inner sums are split into chunks short enough that every partial sum
    stays below 2**53, so no rounding can occur.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    n = a.shape[1]
    if n == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    step = max(1, (2**53) // ((p - 1) ** 2 + 1) - 1)
    af = (np.asarray(a) % p).astype(np.float64)
    bf = (np.asarray(b) % p).astype(np.float64)
    out = zeros(a.shape[0], b.shape[1])
    for lo in range(0, n, step):
        part = af[:, lo:lo + step] @ bf[lo:lo + step]
        out = (out + np.fmod(part, p).astype(np.int64)) % p
    return out


def inverse_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, p - 2, p)


@numba.njit(cache=True)
def _rref_inplace(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            v = a[i, c] % p
            a[i, c] = v
            if v != 0 and k < 0:
                k = i
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = t
        hi = c
        for j in range(c, cols):
            v = a[r, j] % p
            a[r, j] = v
            if v != 0:
                hi = j
        inv = 1
        b = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for j in range(c, hi + 1):
            a[r, j] = a[r, j] * inv % p
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c] % p
            if f == 0:
                a[i, c] = 0
                continue
            f = p - f
            for j in range(c, hi + 1):
                a[i, j] += f * a[r, j]
        pivots[r] = c
        r += 1
    for i in range(rows):
        for j in range(cols):
            a[i, j] %= p
    return pivots[:r]


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivoting picks the first nonzero entry in column order, so the output
    is a deterministic function of the input.
    """
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(m.shape), []
    pivots = _rref_inplace(a, p)
    return a, [int(c) for c in pivots]


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns form the canonical basis of the right null space of ``m``.

    The basis vector attached to a free column ``f`` has a 1 in position
    ``f`` and zeros at every other free column, so it depends only on the
    null space itself.
    """
    return kernel_with_free(m, p)[0]


def kernel_with_free(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Like :func:`kernel_basis`, also returning the free column of each vector.

    Restricting a kernel vector to the free columns gives its coordinates
    in this basis.
    """
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols), list(range(cols))
    red, piv = rref(m, p)
    pset = set(piv)
    free = [c for c in range(cols) if c not in pset]
    k = zeros(cols, len(free))
    if free:
        k[free, np.arange(len(free))] = 1
        if piv:
            k[piv, :] = (-red[: len(piv)][:, free]) % p
    return k, free


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """A particular solution of ``a @ x = b`` (free variables zero), or None."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if b.shape[1] == 0:
        return zeros(n, 0)
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    red, piv = rref(np.hstack([a, b]), p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    if piv:
        x[piv, :] = red[: len(piv), n:]
    return x


def column_space(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (as columns) of the column space: rows of rref(m.T)."""
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0)
    red, piv = rref(m.T, p)
    return red[: len(piv)].T.copy()


class Subspace:
    """A subspace of F_p^n held in reduced form, with quotient coordinates.

    ``basis`` has the subspace's canonical basis as columns; ``pivots`` are
    the pivot positions of that basis.  The complement spanned by the
    standard vectors at non-pivot positions gives a fixed identification
    of the quotient ``F_p^n / W`` with ``F_p^(n - dim W)``.
    """

    def __init__(self, spanning: np.ndarray, p: int):
        self.p = p
        self.ambient = spanning.shape[0]
        if spanning.shape[1] == 0:
            red, piv = zeros(0, self.ambient), []
        else:
            red, piv = rref(spanning.T, p)
        self._rows = red[: len(piv)]
        self.pivots = piv
        pset = set(piv)
        self.nonpivots = [j for j in range(self.ambient) if j not in pset]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> np.ndarray:
        return self._rows.T.copy()

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Canonical representative of ``v`` modulo the subspace (columnwise)."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.pivots:
            return v
        return (v - self._rows.T @ v[self.pivots]) % self.p

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def quotient_map(self) -> np.ndarray:
        """Matrix of the projection onto quotient coordinates."""
        q = identity(self.ambient)[self.nonpivots]
        if self.pivots:
            sel = identity(self.ambient)[self.pivots]
            q = (q - self._rows[:, self.nonpivots].T @ sel) % self.p
        return q

    def section(self) -> np.ndarray:
        """Lift of quotient coordinates to the standard complement."""
        return identity(self.ambient)[:, self.nonpivots].copy()

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of vectors lying in the subspace w.r.t. ``basis``."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[self.pivots]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and np.array_equal(self._rows, other._rows)
        )

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self.basis)

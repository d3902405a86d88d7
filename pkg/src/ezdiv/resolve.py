"""Minimal free resolutions, Betti tables, periodicity and growth estimates.

The kernel of each differential is computed one internal degree at a time
when the algebra and the module are graded; otherwise everything sits in a
single block of degree 0 and the same code runs unchanged.  Within a degree
the kernel basis is the canonical one from :func:`linalg.kernel_with_free`,
and the new generators are the kernel vectors whose free column is not a
pivot of m*K, so the whole resolution is a deterministic function of M.
"""

from __future__ import annotations

import math
from functools import partial
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import LocalAlgebra
from .errors import TableTooShort
from .linalg import Subspace
from .modules import ModuleRep, linearize, minimal_generators, submodule, surjection_from_free


# -- graded layout of free modules -------------------------------------------


class _Layout:
    """Coordinates of the degree-d part of a free module A^n.

    Within a degree, coordinates are ordered by generator degree group, then
    generator, then algebra basis index.
    """

    def __init__(self, gen_degrees, alg_degrees, dA):
        self.gen_degrees = np.asarray(gen_degrees, dtype=np.int64)
        self.alg_degrees = alg_degrees
        self.dA = dA
        self.groups = {}
        for c, g in enumerate(self.gen_degrees.tolist()):
            self.groups.setdefault(g, []).append(c)
        self.groups = {g: np.array(cs, dtype=np.int64) for g, cs in sorted(self.groups.items())}
        self.by_degree = {}
        for e in np.unique(alg_degrees).tolist():
            self.by_degree[e] = np.flatnonzero(alg_degrees == e)

    def basis_of(self, e):
        return self.by_degree.get(e, np.zeros(0, dtype=np.int64))

    def parts(self, d):
        return [(g, cs, self.basis_of(d - g)) for g, cs in self.groups.items()]

    def size(self, d):
        return sum(len(cs) * len(bs) for _, cs, bs in self.parts(d))

    def degrees(self):
        if not len(self.gen_degrees):
            return []
        lo = int(self.gen_degrees.min() + self.alg_degrees.min())
        hi = int(self.gen_degrees.max() + self.alg_degrees.max())
        return [d for d in range(lo, hi + 1) if self.size(d)]

    def global_index(self, d):
        out = [(cs[:, None] * self.dA + bs[None, :]).reshape(-1) for _, cs, bs in self.parts(d)]
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def act(self, gmat, e, d_from, vecs):
        """Apply multiplication by an algebra element of degree e to degree-d_from vectors."""
        off = 0
        pieces = []
        src = self.parts(d_from)
        dst = self.parts(d_from + e)
        for (g, cs, bs), (_, _, bt) in zip(src, dst):
            n = len(cs) * len(bs)
            block = vecs[off:off + n].reshape(len(cs), len(bs), vecs.shape[1])
            off += n
            sub = gmat[np.ix_(bt, bs)]
            pieces.append(np.einsum("ab,cbn->can", sub, block).reshape(len(cs) * len(bt), vecs.shape[1]))
        return np.vstack(pieces) if pieces else np.zeros((0, vecs.shape[1]), dtype=np.int64)

    def scatter(self, d, vecs, out):
        """Write vectors in degree-d coordinates into the columns of an algebra matrix."""
        off = 0
        for _, cs, bs in self.parts(d):
            n = len(cs) * len(bs)
            block = vecs[off:off + n].reshape(len(cs), len(bs), vecs.shape[1])
            off += n
            out[np.ix_(cs, np.arange(vecs.shape[1]), bs)] = block.transpose(0, 2, 1)


def _diff_block_chunks(diff, src: _Layout, dst: _Layout, table, d, p, max_cells=2**24):
    """Column slabs of the degree-d k-matrix of an algebra matrix src -> dst.

    Slabs follow the coordinate order of ``src`` in degree d; only algebra
    coordinates that can contribute are converted to int64.
    """
    dst_parts = dst.parts(d)
    nrows = dst.size(d)
    for _, cs, b_idx in src.parts(d):
        if not len(cs) or not len(b_idx):
            continue
        per_gen = max(1, nrows * len(b_idx) * max(1, table.shape[0]))
        step = max(1, max_cells // per_gen)
        for lo in range(0, len(cs), step):
            chunk = cs[lo:lo + step]
            rows = []
            for _, rs, a_idx in dst_parts:
                if not len(rs) or not len(a_idx):
                    continue
                tab = table[:, b_idx][:, :, a_idx]
                ls = np.flatnonzero(tab.any(axis=(1, 2)))
                if not len(ls):
                    rows.append(np.zeros((len(rs) * len(a_idx), len(chunk) * len(b_idx)), dtype=np.int64))
                    continue
                sub = diff[np.ix_(rs, chunk, ls)].astype(np.int64)
                t = np.tensordot(sub, tab[ls], axes=([2], [0])) % p  # r c b a
                rows.append(np.ascontiguousarray(t.transpose(0, 3, 1, 2)).reshape(
                    len(rs) * len(a_idx), len(chunk) * len(b_idx)))
            if rows:
                yield np.vstack(rows)
            else:
                yield np.zeros((0, len(chunk) * len(b_idx)), dtype=np.int64)


def _diff_block(diff, src, dst, table, d, p):
    slabs = list(_diff_block_chunks(diff, src, dst, table, d, p))
    if not slabs:
        return np.zeros((dst.size(d), 0), dtype=np.int64)
    return np.hstack(slabs)


# -- complexes -------------------------------------------------------------


@dataclass
class FreeComplex:
    """F_n -> ... -> F_0 (-> M) over an algebra.

    ``diffs[i - 1]`` is the differential from F_i to F_(i-1), an algebra
    matrix of shape (rank F_(i-1), rank F_i, dim A).  Differentials are stored
    as uint16 (every residue fits) and handed out as int64.  ``gen_degrees``
    and ``alg_degrees`` carry the internal grading (all zero when ungraded).
    """

    algebra: LocalAlgebra
    ranks: list
    diffs: list = field(default_factory=list)
    augmentation: np.ndarray | None = None
    module: ModuleRep | None = None
    gen_degrees: list = field(default_factory=list)
    alg_degrees: np.ndarray | None = None
    # kernel dimension and rank of the map out of F_i per internal degree
    # (i = 0 is the augmentation), recorded while building
    kernel_dims: list = field(default_factory=list)
    block_ranks: list = field(default_factory=list)
    degree_limit: int | None = None
    truncated: bool = False

    def __post_init__(self):
        if self.alg_degrees is None:
            self.alg_degrees = np.zeros(self.algebra.dim, dtype=np.int64)
        if not self.gen_degrees:
            self.gen_degrees = [np.zeros(r, dtype=np.int64) for r in self.ranks]

    @property
    def length(self) -> int:
        return len(self.diffs)

    def diff(self, i: int) -> np.ndarray:
        """The differential F_i -> F_(i-1) as an int64 algebra matrix."""
        return self.diffs[i - 1].astype(np.int64)

    def differential_map(self, i: int) -> np.ndarray:
        return linearize(self.diff(i), self.algebra)

    def layout(self, i: int) -> _Layout:
        return _Layout(self.gen_degrees[i], self.alg_degrees, self.algebra.dim)

    def degrees(self, i: int) -> list:
        ds = self.layout(i).degrees()
        return [d for d in ds if self.degree_limit is None or d <= self.degree_limit]

    def block(self, i: int, d: int) -> np.ndarray:
        """Degree-d k-matrix of d_i."""
        return _diff_block(self.diffs[i - 1], self.layout(i), self.layout(i - 1),
                           self.algebra.table, d, self.algebra.p)

    def block_slabs(self, i: int, d: int):
        return _diff_block_chunks(self.diffs[i - 1], self.layout(i), self.layout(i - 1),
                                  self.algebra.table, d, self.algebra.p)


def _store(mat):
    return np.ascontiguousarray(mat).astype(np.uint16)


def _grading(a: LocalAlgebra, m: ModuleRep):
    if a.is_graded and m.degrees is not None:
        return a.basis_degrees, m.degrees, np.array([1] * a.ring.nvars, dtype=np.int64)
    z = np.zeros(a.dim, dtype=np.int64)
    return z, np.zeros(m.dim, dtype=np.int64), np.zeros(a.ring.nvars, dtype=np.int64)


def _kernel_generators(blocks, degrees, layout: _Layout, gen_mats, gen_degs, p):
    """Minimal generators of the kernel of a graded map, degree by degree.

    ``blocks(d)`` returns the degree-d matrix of the map.  Returns the list of
    (degree, vectors) of new generators and the kernel dimension and block
    rank per degree.
    """
    kernels = {}
    gens, kdims, ranks = [], {}, {}
    for d in degrees:
        blk = blocks(d)
        if blk.shape[0] == 0:
            k = np.eye(blk.shape[1], dtype=np.int64)
            free = list(range(blk.shape[1]))
        else:
            k, free = linalg.kernel_with_free(blk, p)
        del blk
        ranks[d] = layout.size(d) - len(free)
        kdims[d] = len(free)
        kernels[d] = (k, free)
        if not free:
            continue
        # m*K in degree d, in the coordinates of K_d (values at free columns)
        coords = []
        for gm, e in zip(gen_mats, gen_degs):
            prev = kernels.get(d - int(e))
            if prev is None or not prev[1]:
                continue
            w = layout.act(gm, int(e), d - int(e), prev[0])
            coords.append(w[free] % p)
        if coords:
            pick = Subspace(np.hstack(coords), p).nonpivots
        else:
            pick = list(range(len(free)))
        if pick:
            gens.append((d, k[:, pick]))
    return gens, kdims, ranks


def minimal_resolution(m: ModuleRep, n: int, degree_limit: int | None = None) -> FreeComplex:
    """Minimal free resolution of m up to F_n.

    With ``degree_limit`` (graded input only) internal degrees above the limit
    are skipped: Betti numbers are then exact in degrees <= limit and lower
    bounds in total, and ``truncated`` is set when anything was skipped.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = m.algebra
    p = a.p
    alg_deg, mod_deg, var_deg = _grading(a, m)
    if not alg_deg.any():
        degree_limit = None
    gen_mats = list(a.generator_mult_matrices)
    mu, gens0 = minimal_generators(m)
    eps = surjection_from_free(m, gens0)
    # generators are standard vectors of M, so they inherit its degrees
    deg0 = np.array([mod_deg[int(np.flatnonzero(col)[0])] for col in gens0.T], dtype=np.int64)
    cx = FreeComplex(a, [mu], [], eps, m, [deg0], alg_deg, degree_limit=degree_limit)
    layout = _Layout(deg0, alg_deg, a.dim)

    def aug_block(d):
        rows = np.flatnonzero(mod_deg == d)
        return eps[np.ix_(rows, layout.global_index(d))]

    blocks = aug_block
    for i in range(n):
        degrees = layout.degrees()
        kept = [d for d in degrees if degree_limit is None or d <= degree_limit]
        cx.truncated |= len(kept) < len(degrees)
        gens, kdims, ranks = _kernel_generators(blocks, kept, layout, gen_mats, var_deg, p)
        cx.kernel_dims.append(kdims)
        cx.block_ranks.append(ranks)
        total = sum(v.shape[1] for _, v in gens)
        nxt = np.zeros((cx.ranks[-1], total, a.dim), dtype=np.uint16)
        degs = []
        off = 0
        for j in range(len(gens)):
            d, v = gens[j]
            layout.scatter(d, v, nxt[:, off:off + v.shape[1]])
            degs += [d] * v.shape[1]
            off += v.shape[1]
            gens[j] = None
        del gens
        cx.diffs.append(nxt)
        cx.ranks.append(total)
        cx.gen_degrees.append(np.array(degs, dtype=np.int64))
        layout = cx.layout(i + 1)
        blocks = partial(cx.block, i + 1)
    return cx


# -- invariants -------------------------------------------------------------


@dataclass
class ComplexCheck:
    squares_zero: bool
    minimal: bool
    exact: bool
    augmentation_onto: bool
    details: list = field(default_factory=list)
    unchecked: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.squares_zero and self.minimal and self.exact and self.augmentation_onto


def check_complex(f: FreeComplex, require_minimal: bool = True, max_cells: int = 5 * 10**7) -> ComplexCheck:
    """d^2 = 0, entries in m, and exactness at every spot below the top.

    Compositions are checked degree by degree.  Exactness at F_i compares
    the kernel dimension of d_i recorded while building with the rank of
    d_(i+1), which comes from a separate elimination; the rank of the top
    differential is computed here unless its block exceeds ``max_cells``
    entries, in which case the spot is listed in ``unchecked``.
    """
    a, p = f.algebra, f.algebra.p
    details, unchecked = [], []
    sq = True
    if f.augmentation is not None and f.length and f.ranks[1]:
        if linalg.matmul(f.augmentation, linearize(f.diff(1), a), p).any():
            sq = False
            details.append("augmentation o d1 != 0")
    for i in range(2, f.length + 1):
        if not (f.ranks[i] and f.ranks[i - 1] and f.ranks[i - 2]):
            continue
        for d in f.degrees(i):
            left = f.block(i - 1, d)
            if not left.size:
                continue
            if any(linalg.matmul(left, slab, p).any() for slab in f.block_slabs(i, d)):
                sq = False
                details.append(f"d{i - 1} d{i} != 0 in degree {d}")
    minimal = all(not d[:, :, 0].any() for d in f.diffs)
    if not minimal:
        details.append("a differential has a unit entry")
    onto = True
    if f.module is not None and f.augmentation is not None:
        onto = linalg.rank(f.augmentation, p) == f.module.dim
        if not onto:
            details.append("augmentation is not onto")
    ranks = list(f.block_ranks)
    if f.length and len(ranks) == f.length:
        top = {}
        for d in f.degrees(f.length):
            lay_src, lay_dst = f.layout(f.length), f.layout(f.length - 1)
            if lay_src.size(d) * lay_dst.size(d) > max_cells:
                unchecked.append(f"exactness at F_{f.length - 1}, degree {d}")
                top[d] = None
            else:
                top[d] = linalg.rank(f.block(f.length, d), p)
        ranks.append(top)
    exact = True
    for i, kd in enumerate(f.kernel_dims):
        if i + 1 >= len(ranks):
            continue
        for d, k in kd.items():
            r = ranks[i + 1].get(d, 0)
            if r is None:
                continue
            if r != k:
                exact = False
                details.append(f"homology at F_{i}, degree {d}: kernel {k}, image {r}")
    return ComplexCheck(sq, minimal or not require_minimal, exact, onto, details, unchecked)


# -- Betti tables -----------------------------------------------------------


@dataclass
class BettiTable:
    name: str
    betti: list
    graded: list = field(default_factory=list)
    lower_bounds: bool = False

    @property
    def pd_finite(self) -> bool:
        return 0 in self.betti

    def well_formed(self) -> bool:
        seen_zero = False
        for b in self.betti:
            if b < 0 or (seen_zero and b):
                return False
            seen_zero |= b == 0
        return True


def betti_table(m: ModuleRep, n: int, name: str = "M", degree_limit=None) -> BettiTable:
    f = minimal_resolution(m, n, degree_limit)
    graded = [dict(zip(*np.unique(g, return_counts=True))) for g in f.gen_degrees]
    graded = [{int(k): int(v) for k, v in g.items()} for g in graded]
    return BettiTable(name, list(f.ranks), graded, f.truncated)


@dataclass
class GrowthEstimate:
    kind: str            # finite-pd | bounded | polynomial | exponential
    complexity: float | None
    note: str = "estimate from finite data"

    def __str__(self):
        cx = "inf" if self.complexity == math.inf else self.complexity
        return f"{self.kind} (cx ~ {cx}; {self.note})"


def _linfit(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    resid = sum((y - my - slope * (x - mx)) ** 2 for x, y in zip(xs, ys))
    return slope, resid


def complexity_estimate(b: BettiTable | list) -> GrowthEstimate:
    """Heuristic growth class of a Betti sequence.

    Compares a fit of log b_n against log n (polynomial) and against n
    (exponential) over the second half of the table.
    """
    seq = list(b.betti if isinstance(b, BettiTable) else b)
    if len(seq) < 6:
        raise TableTooShort(f"need at least 6 Betti numbers, got {len(seq)}")
    if 0 in seq:
        return GrowthEstimate("finite-pd", 0)
    tail = seq[len(seq) // 2:]
    if len(set(tail)) == 1:
        return GrowthEstimate("bounded", 1)
    idx = list(range(len(seq) // 2, len(seq)))
    logs = [math.log(v) for v in tail]
    poly_slope, poly_res = _linfit([math.log(i) for i in idx], logs)
    exp_slope, exp_res = _linfit(idx, logs)
    ratios = [tail[j + 1] / tail[j] for j in range(len(tail) - 1)]
    if exp_res < poly_res and min(ratios) > 1.2:
        return GrowthEstimate("exponential", math.inf)
    return GrowthEstimate("polynomial", max(1, round(poly_slope) + 1))


def detect_periodicity(f: FreeComplex, start: int = 1) -> int | None:
    """Smallest period q <= length/2 with d_(i+q) == d_i for every i >= start in range."""
    diffs = f.diffs[start - 1:]
    for q in range(1, len(diffs) // 2 + 1):
        if all(
            diffs[i].shape == diffs[i + q].shape and np.array_equal(diffs[i], diffs[i + q])
            for i in range(len(diffs) - q)
        ):
            return q
    return None


def syzygy(f: FreeComplex, n: int) -> ModuleRep:
    """The n-th syzygy, as the image of d_n inside F_(n-1) (n >= 1)."""
    from .modules import free

    a = f.algebra
    big = free(a, f.ranks[n - 1])
    if not f.ranks[n]:
        return submodule(big, np.zeros((big.dim, 0), dtype=np.int64))[0]
    return submodule(big, linearize(f.diff(n), a))[0]


def pad_with_trivial(f: FreeComplex, j: int) -> FreeComplex:
    """Add the split complex 0 -> A --1--> A -> 0 in homological degrees j, j-1.

    The result is a (non-minimal) resolution of the same module.
    """
    if not 1 <= j <= f.length:
        raise ValueError(f"padding degree must lie in 1..{f.length}")
    a = f.algebra
    ranks = list(f.ranks)
    ranks[j] += 1
    ranks[j - 1] += 1
    diffs = []
    for i in range(1, f.length + 1):
        d = f.diff(i)
        r, c = ranks[i - 1], ranks[i]
        new = np.zeros((r, c, a.dim), dtype=np.int64)
        new[: d.shape[0], : d.shape[1]] = d
        if i == j:
            new[r - 1, c - 1, 0] = 1
        diffs.append(_store(new))
    aug = f.augmentation
    if j == 1 and aug is not None:
        aug = np.hstack([aug, np.zeros((aug.shape[0], a.dim), dtype=np.int64)])
    return FreeComplex(a, ranks, diffs, aug, f.module)

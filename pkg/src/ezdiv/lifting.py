"""Lifting R-modules along S -> R = S/(x) for a self-paired exact zero-divisor x.

A free resolution F of M over R is lifted entrywise through the monomial
section to a preimage complex F~ over S.  Then d~ d~ = x s~, and s = s~ mod x
is a chain endomorphism of degree -2 whose class in Ext^2_R(M, M) decides
liftability.  When the class vanishes, a null-homotopy h gives the
differentials d# = d~ - x h~ of a lifted resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import AlgebraSurjection, Element
from .errors import DivisionFails, HorizonInconclusive, HypothesisFails, ResolutionTooShort
from .homology import PairSetting, tor_dims
from .modules import (
    ModulePresentation,
    ModuleRep,
    action_invariants,
    amatmul,
    amatrix_map,
    blockify,
    free,
    inflate,
    linearize,
    quotient,
    realize,
)
from .report import Report
from .resolve import FreeComplex, _store, detect_periodicity, minimal_resolution


def _scale(mat: np.ndarray, x: Element) -> np.ndarray:
    """x times an algebra matrix, entrywise."""
    return np.tensordot(mat, x.mult_matrix(), axes=([2], [1])) % x.algebra.p


def _square(f: FreeComplex, i: int) -> np.ndarray:
    """d_(i-1) d_i as an algebra matrix."""
    return amatmul(f.diff(i - 1), f.diff(i), f.algebra)


# -- preimages ---------------------------------------------------------------


@dataclass
class PreimageComplex:
    """A complex of free S-modules whose reduction mod x is ``base``."""

    complex: FreeComplex
    base: FreeComplex
    surj: AlgebraSurjection

    @property
    def length(self) -> int:
        return self.complex.length

    def diff(self, i: int) -> np.ndarray:
        return self.complex.diff(i)

    def reduce(self) -> list:
        return [amatrix_map(self.diff(i), self.surj.proj, self.base.algebra.p)
                for i in range(1, self.length + 1)]

    def check(self) -> bool:
        """Reduction gives back the base and every entry of d~ d~ lies in (x)."""
        for i, d in enumerate(self.reduce(), start=1):
            if not np.array_equal(d, self.base.diff(i)):
                return False
        ideal = linalg.Subspace(self.surj.x.mult_matrix(), self.surj.source.p)
        for i in range(2, self.length + 1):
            sq = _square(self.complex, i)
            cols = sq.reshape(-1, sq.shape[2]).T
            if cols.size and not all(ideal.contains(c) for c in cols.T):
                return False
        return True


def preimage_complex(f: FreeComplex, surj: AlgebraSurjection, twist=None) -> PreimageComplex:
    """Apply the section entrywise to every differential.

    ``twist`` (a list of S-matrices, one per differential) adds x times each
    matrix, which gives a different preimage of the same complex.
    """
    if not f.algebra.same_as(surj.target):
        raise ValueError("complex is not over the target of the surjection")
    s_alg = surj.source
    diffs = []
    for i in range(1, f.length + 1):
        d = amatrix_map(f.diff(i), surj.section, s_alg.p)
        if twist is not None:
            d = (d + _scale(np.asarray(twist[i - 1], dtype=np.int64), surj.x)) % s_alg.p
        diffs.append(_store(d))
    return PreimageComplex(FreeComplex(s_alg, list(f.ranks), diffs), f, surj)


def random_twist(pf: PreimageComplex, rng) -> list:
    """Random S-matrices shaped like the differentials of pf (numpy Generator)."""
    p = pf.surj.source.p
    return [rng.integers(0, p, size=pf.diff(i).shape) for i in range(1, pf.length + 1)]


# -- the canonical endomorphism -------------------------------------------------


@dataclass
class ChainEndo:
    """s_i: F_i -> F_(i-2) over R, for 2 <= i <= top, with chosen lifts s~_i."""

    maps: dict
    lifts: dict
    base: FreeComplex

    @property
    def top(self) -> int:
        return max(self.maps, default=1)

    def __getitem__(self, i):
        return self.maps[i]

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps.values())

    def check(self) -> bool:
        """Chain-map law s_(i-1) d_i = d_(i-2) s_i where both sides are defined."""
        a = self.base.algebra
        for i in range(3, self.top + 1):
            left = amatmul(self.maps[i - 1], self.base.diff(i), a)
            right = amatmul(self.base.diff(i - 2), self.maps[i], a)
            if not np.array_equal(left, right):
                return False
        return True


def divide_by(x: Element, entries: np.ndarray, shift: np.ndarray | None = None) -> np.ndarray:
    """u with x u = entries (columns are S-elements); ``shift`` is added times x.

    Different division solutions differ by Ann(x) = (x) when x is self-paired;
    ``shift`` produces such an alternative.
    """
    p = x.algebra.p
    if entries.shape[1] == 0:
        return entries.copy()
    u = linalg.solve(x.mult_matrix(), entries, p)
    if u is None:
        raise DivisionFails("an entry of d~ d~ is not divisible by x")
    if shift is not None:
        u = (u + linalg.matmul(x.mult_matrix(), shift, p)) % p
    return u


def canonical_endomorphism(pf: PreimageComplex, x: Element | None = None, rng=None) -> ChainEndo:
    """Factor d~_(i-1) d~_i = x s~_i and reduce mod x.

    With ``rng`` (numpy Generator) each division solution is shifted by a
    random multiple of x, which must not change s.
    """
    surj = pf.surj
    x = surj.x if x is None else x
    s_alg, r_alg = surj.source, surj.target
    maps, lifts = {}, {}
    for i in range(2, pf.length + 1):
        sq = _square(pf.complex, i)
        rows, cols, dS = sq.shape
        flat = sq.reshape(-1, dS).T
        shift = rng.integers(0, s_alg.p, size=flat.shape) if rng is not None else None
        u = divide_by(x, flat, shift)
        st = u.T.reshape(rows, cols, dS)
        lifts[i] = st
        maps[i] = amatrix_map(st, surj.proj, r_alg.p)
    return ChainEndo(maps, lifts, pf.base)


# -- the class in Ext^2 -----------------------------------------------------------


def _coboundary(f: FreeComplex, i: int, m: ModuleRep) -> np.ndarray:
    """Hom(F_(i-1), M) -> Hom(F_i, M), on M^(rank) coordinates."""
    d = f.diff(i)
    return blockify(d.transpose(1, 0, 2), m.actions, m.p)


@dataclass
class Obstruction:
    """Class of eps s_2 in Ext^2(M, M) = Z / B, with coordinates on a fixed complement of B in Z."""

    cocycle: np.ndarray
    coordinates: list
    ext_dim: int

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)


def _complement(big: np.ndarray, small: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``big`` completing a basis of span(small) to span(big)."""
    chosen = []
    span = linalg.Subspace(small, p)
    for j in range(big.shape[1]):
        v = big[:, j]
        if not span.contains(v):
            chosen.append(v)
            span = linalg.Subspace(np.column_stack([span.basis, v]), p)
    if not chosen:
        return np.zeros((big.shape[0], 0), dtype=np.int64)
    return np.column_stack(chosen)


def ext2_class(s: ChainEndo, f: FreeComplex, m: ModuleRep) -> Obstruction:
    if f.length < 3 or 2 not in s.maps:
        raise ResolutionTooShort("the Ext^2 class needs d_1, d_2, d_3 and s_2")
    if f.augmentation is None:
        raise ValueError("the complex carries no augmentation onto the module")
    p = m.p
    eps = f.augmentation
    s2 = s.maps[2]
    dm = m.dim
    cocycle = np.zeros(f.ranks[2] * dm, dtype=np.int64)
    for j in range(f.ranks[2]):
        cocycle[j * dm:(j + 1) * dm] = linalg.matmul(eps, s2[:, j, :].reshape(-1, 1), p)[:, 0]
    z = linalg.kernel_basis(_coboundary(f, 3, m), p) if f.ranks[3] else np.eye(len(cocycle), dtype=np.int64)
    b = linalg.column_space(_coboundary(f, 2, m), p) if f.ranks[1] else np.zeros((len(cocycle), 0), dtype=np.int64)
    comp = _complement(z, b, p)
    coords = []
    if comp.shape[1]:
        sol = linalg.solve(np.hstack([b, comp]), cocycle.reshape(-1, 1), p)
        if sol is None:
            raise ValueError("eps s_2 is not a cocycle")
        coords = [int(c) for c in sol[b.shape[1]:, 0]]
    return Obstruction(cocycle, coords, comp.shape[1])


# -- null-homotopies --------------------------------------------------------------


def _left_action(d: np.ndarray, cols: int, a) -> np.ndarray:
    """vec(H) -> vec(d H) for H with ``cols`` columns; vec orders (column, row, basis)."""
    blk = blockify(d, a.mult_matrices, a.p)
    return np.kron(np.eye(cols, dtype=np.int64), blk)


def _right_action(d: np.ndarray, rows: int, a) -> np.ndarray:
    """vec(H) -> vec(H d) for H with ``rows`` rows (commutative algebra)."""
    k = np.einsum("bju,uml->jmbl", d, a.mult_matrices) % a.p  # j, m, b, l
    J, dA, B, _ = k.shape
    t = np.einsum("jmbl,ac->jambcl", k, np.eye(rows, dtype=np.int64))
    return t.reshape(J * rows * dA, B * rows * dA)


def _vec(mat: np.ndarray) -> np.ndarray:
    return mat.transpose(1, 0, 2).reshape(-1)


def _unvec(v: np.ndarray, rows, cols, dA) -> np.ndarray:
    return v.reshape(cols, rows, dA).transpose(1, 0, 2)


@dataclass
class Homotopy:
    """h_i: F_i -> F_(i-1), 1 <= i <= top."""

    maps: dict

    def __getitem__(self, i):
        return self.maps[i]


def homotopy_residual(s: ChainEndo, f: FreeComplex, h: Homotopy, n: int) -> bool:
    """True when s_i = d_(i-1) h_i + h_(i-1) d_i for 2 <= i <= n."""
    a = f.algebra
    for i in range(2, n + 1):
        rhs = amatmul(h[i - 1], f.diff(i), a) + amatmul(f.diff(i - 1), h[i], a)
        if not np.array_equal(rhs % a.p, s[i] % a.p):
            return False
    return True


def _joint(s: ChainEndo, f: FreeComplex, n: int) -> dict | None:
    """h_1..h_n from the single system {s_i = d_(i-1) h_i + h_(i-1) d_i : 2 <= i <= n}."""
    a = f.algebra
    dA, p, r = a.dim, a.p, f.ranks
    sizes = [r[i - 1] * r[i] * dA for i in range(1, n + 1)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    eq_sizes = [r[i - 2] * r[i] * dA for i in range(2, n + 1)]
    eq_offs = np.concatenate([[0], np.cumsum(eq_sizes)]).astype(int)
    sysm = np.zeros((eq_offs[-1], offs[-1]), dtype=np.int64)
    rhs = np.zeros((eq_offs[-1], 1), dtype=np.int64)
    for e, i in enumerate(range(2, n + 1)):
        r0, r1 = eq_offs[e], eq_offs[e + 1]
        if r0 == r1:
            continue
        rhs[r0:r1, 0] = _vec(s[i])
        # d_(i-1) h_i
        c0, c1 = offs[i - 1], offs[i]
        if c1 > c0:
            sysm[r0:r1, c0:c1] = _left_action(f.diff(i - 1), r[i], a)
        # h_(i-1) d_i
        c0, c1 = offs[i - 2], offs[i - 1]
        if c1 > c0:
            sysm[r0:r1, c0:c1] = (sysm[r0:r1, c0:c1] + _right_action(f.diff(i), r[i - 2], a)) % p
    if sysm.shape[1] == 0:
        sol = None if rhs.any() else np.zeros((0, 1), dtype=np.int64)
    else:
        sol = linalg.solve(sysm, rhs, p)
    if sol is None:
        return None
    return {i: _unvec(sol[offs[i - 1]:offs[i], 0], r[i - 1], r[i], dA) for i in range(1, n + 1)}


def _extend(s: ChainEndo, f: FreeComplex, maps: dict, i: int) -> np.ndarray | None:
    """h_i with d_(i-1) h_i = s_i - h_(i-1) d_i, column by column."""
    a = f.algebra
    p, dA, r = a.p, a.dim, f.ranks
    target = (s[i] - amatmul(maps[i - 1], f.diff(i), a)) % p
    rows = r[i - 2] * dA
    t = target.transpose(0, 2, 1).reshape(rows, r[i])
    if r[i - 1] == 0 or r[i] == 0:
        return np.zeros((r[i - 1], r[i], dA), dtype=np.int64) if not t.any() else None
    x = linalg.solve(linearize(f.diff(i - 1), a), t, p)
    if x is None:
        return None
    return x.reshape(r[i - 1], dA, r[i]).transpose(0, 2, 1)


def _joint_size(f: FreeComplex, n: int) -> int:
    dA, r = f.algebra.dim, f.ranks
    cols = sum(r[i - 1] * r[i] for i in range(1, n + 1)) * dA
    rows = sum(r[i - 2] * r[i] for i in range(2, n + 1)) * dA
    return rows * cols


def null_homotopy(s: ChainEndo, f: FreeComplex, n: int, method: str = "auto",
                  max_cells: int = 4 * 10**7) -> Homotopy | None:
    """h with s_i = d_(i-1) h_i + h_(i-1) d_i for 2 <= i <= n, or None.

    ``joint`` solves one system for all h_i.  ``staged`` solves the i = 2
    equation jointly for h_1, h_2 and then each h_i (i >= 3) from
    d_(i-1) h_i = s_i - h_(i-1) d_i; on a resolution the right side is always
    a cycle (d_(i-2) of it is s_(i-1) d_i - (s_(i-1) - h_(i-2) d_(i-1)) d_i = 0),
    so this never dead-ends.  ``auto`` picks joint when the system is small.
    """
    if n < 2:
        raise ValueError("horizon must be at least 2")
    if f.length < n or s.top < n:
        raise ResolutionTooShort(f"need the resolution and s up to index {n}")
    if method == "auto":
        method = "joint" if _joint_size(f, n) <= max_cells else "staged"
    if method == "joint":
        maps = _joint(s, f, n)
        return None if maps is None else Homotopy(maps)
    if method != "staged":
        raise ValueError(f"unknown method {method!r}")
    maps = _joint(s, f, 2)
    if maps is None:
        return None
    for i in range(3, n + 1):
        h = _extend(s, f, maps, i)
        if h is None:
            raise HorizonInconclusive(f"staged homotopy stalled at index {i}; the complex is not exact there")
        maps[i] = h
    return Homotopy(maps)


# -- lifting -------------------------------------------------------------------


@dataclass
class Obstructed:
    obstruction: Obstruction
    horizon: int
    homotopy_found: bool = False

    status = "obstructed"


@dataclass
class Lifted:
    presentation: ModulePresentation
    complex: FreeComplex
    horizon: int
    certificate: str
    obstruction: Obstruction | None = None
    report: Report | None = None

    status = "lifted"

    @property
    def module(self) -> ModuleRep:
        return realize(self.presentation)


def _periodic_certificate(cx: FreeComplex, n: int) -> str:
    """'all degrees' when d# repeats verbatim with a period already covered by the checks."""
    for start in (1, 2, 3):
        if start > cx.length:
            break
        q = detect_periodicity(cx, start)
        if q is not None and cx.length - start >= q:
            return f"all degrees (period {q} from index {start})"
    return f"indices 1..{n}"


def lift_module(m: ModuleRep, setting: PairSetting, horizon: int = 8, verify: bool = True):
    """Lifted(...) or Obstructed(...) for an R-module m."""
    if not setting.self_paired:
        raise HypothesisFails("lifting needs a pair of the form (x, x)")
    if not m.algebra.same_as(setting.R):
        raise ValueError("module is not over R = S/(x)")
    n = max(horizon, 3)
    surj, x = setting.surj, setting.x
    f = minimal_resolution(m, n)
    pf = preimage_complex(f, surj)
    s = canonical_endomorphism(pf, x)
    obs = ext2_class(s, f, m)
    if not obs.is_zero:
        return Obstructed(obs, n)
    h = null_homotopy(s, f, n)
    if h is None:
        raise HorizonInconclusive(f"the class vanishes but no homotopy exists up to index {n}")
    s_alg = surj.source
    diffs = []
    for i in range(1, n + 1):
        ht = amatrix_map(h[i], surj.section, s_alg.p)
        diffs.append(_store((pf.diff(i) - _scale(ht, x)) % s_alg.p))
    lifted = FreeComplex(s_alg, list(f.ranks), diffs)
    for i in range(2, n + 1):
        if _square(lifted, i).any():
            raise HorizonInconclusive(f"d# d# is nonzero at index {i}")
    pres = ModulePresentation(s_alg, f.ranks[0], lifted.diff(1))
    res = Lifted(pres, lifted, n, _periodic_certificate(lifted, n), obs)
    if verify:
        res.report = verify_lift(res.module, m, surj, horizon)
        res.report.notes.append(f"d# d# = 0 certified for {res.certificate}")
    return res


def reduces_to_base(lifted: FreeComplex, f: FreeComplex, surj: AlgebraSurjection) -> bool:
    """d# = d mod x, entrywise."""
    return all(
        np.array_equal(amatrix_map(lifted.diff(i), surj.proj, f.algebra.p), f.diff(i))
        for i in range(1, min(lifted.length, f.length) + 1)
    )


def verify_lift(m_prime: ModuleRep, m: ModuleRep, surj: AlgebraSurjection, horizon: int = 8) -> Report:
    """M' (x) R against M by dimension and action invariants, then Tor^S_i(M', R) = 0."""
    rep = Report("lift-check")
    red, _ = quotient(m_prime, m_prime.act(surj.x))
    target = inflate(m, surj)
    rep.add("dim M'(x)R", m.dim, red.dim)
    rep.add("actions", "match", "match" if action_invariants(red) == action_invariants(target) else "differ")
    r_as_s, _ = quotient(free(surj.source, 1), surj.x.mult_matrix())
    tor = tor_dims(m_prime, r_as_s, (1, horizon), ring="S", names=("M'", "R"))
    for i in tor.indices():
        rep.add(f"Tor_{i}(M',R)", 0, tor[i])
    return rep


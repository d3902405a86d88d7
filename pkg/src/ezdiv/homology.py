"""Tor and Ext dimensions, and verifiers for the change-of-rings statements.

All isomorphism claims are checked as equalities of k-dimensions.  Each
verifier recomputes its hypotheses and records them separately from the
conclusion rows of its report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import Element, LocalAlgebra, exact_zero_divisor_partner, is_exact_pair, quotient_by_element
from .errors import AlgebraMismatch, HypothesisFails
from .modules import (
    ModuleRep,
    blockify,
    free,
    hom,
    inflate,
    mult_kernel_image,
    quotient,
    residue_field,
    tensor,
)
from .report import Report
from .resolve import FreeComplex, minimal_resolution


@dataclass
class TorProfile:
    ring: str
    m_name: str
    n_name: str
    start: int
    dims: list
    # dims are lower bounds when the resolution was cut at an internal degree
    lower_bound: bool = False

    def __getitem__(self, i):
        return self.dims[i - self.start]

    def indices(self):
        return range(self.start, self.start + len(self.dims))


@dataclass
class ExtProfile(TorProfile):
    pass


def killed_by_max_ideal(n: ModuleRep) -> bool:
    return not n.generator_actions.any()


def _coefficient_map(f: FreeComplex, i: int, n: ModuleRep, transpose: bool = False) -> np.ndarray:
    """d_i (or its transpose) acting on copies of n, touching only nonzero actions."""
    mat = f.diffs[i - 1]
    ls = [l for l in range(n.actions.shape[0]) if n.actions[l].any()]
    sub = mat[:, :, ls].astype(np.int64)
    if transpose:
        sub = sub.transpose(1, 0, 2)
    return blockify(sub, n.actions[ls], n.p)


def _rank(mat, p):
    return linalg.rank(mat, p) if mat.size else 0


def _resolve_for(m, top, resolution, degree_limit):
    if resolution is not None and resolution.length >= top:
        return resolution
    return minimal_resolution(m, top, degree_limit)


def tor_dims(m: ModuleRep, n: ModuleRep, rng=(0, 6), resolution: FreeComplex | None = None,
             degree_limit: int | None = None, ring: str = "A", names=("M", "N")) -> TorProfile:
    """dim_k Tor_i(M, N) for i in the inclusive range, from a minimal resolution of M.

    When mN = 0 the image of d_(b+1) tensor N vanishes (its entries lie in m),
    so the top index needs no extra resolution step.
    """
    if not m.algebra.same_as(n.algebra):
        raise AlgebraMismatch("Tor of modules over different algebras")
    a, b = rng
    p = m.p
    killed = killed_by_max_ideal(n)
    top = b if killed else b + 1
    f = _resolve_for(m, top, resolution, degree_limit)
    if f.truncated and not killed:
        raise ValueError("a degree-truncated resolution only gives Tor against modules killed by m")
    ranks = {0: 0, b + 1: 0}
    for i in range(max(1, a), min(b + 1, f.length) + 1):
        ranks[i] = _rank(_coefficient_map(f, i, n), p)
    dims = [f.ranks[i] * n.dim - ranks[i] - ranks[i + 1] for i in range(a, b + 1)]
    return TorProfile(ring, names[0], names[1], a, dims, f.truncated)


def ext_dims(m: ModuleRep, n: ModuleRep, rng=(0, 6), resolution: FreeComplex | None = None,
             degree_limit: int | None = None, ring: str = "A", names=("M", "N")) -> ExtProfile:
    """dim_k Ext^i(M, N): cohomology of Hom(F, N) = N^(beta_i) with transposed blocks."""
    if not m.algebra.same_as(n.algebra):
        raise AlgebraMismatch("Ext of modules over different algebras")
    a, b = rng
    p = m.p
    killed = killed_by_max_ideal(n)
    top = b if killed else b + 1
    f = _resolve_for(m, top, resolution, degree_limit)
    if f.truncated and not killed:
        raise ValueError("a degree-truncated resolution only gives Ext against modules killed by m")
    ranks = {0: 0, b + 1: 0}
    for i in range(max(1, a), min(b + 1, f.length) + 1):
        ranks[i] = _rank(_coefficient_map(f, i, n, transpose=True), p)
    dims = [f.ranks[i] * n.dim - ranks[i] - ranks[i + 1] for i in range(a, b + 1)]
    return ExtProfile(ring, names[0], names[1], a, dims, f.truncated)


# -- the setting S, (x, y), R = S/(x) ----------------------------------------


def residue_field_gate(a: LocalAlgebra) -> bool:
    """Residue field equals the prime field, so length equals k-dimension."""
    return a.dim - a.max_ideal.dim == 1


@dataclass
class PairSetting:
    S: LocalAlgebra
    x: Element
    y: Element
    R: LocalAlgebra = field(repr=False)
    surj: object = field(repr=False)

    @classmethod
    def build(cls, s_alg: LocalAlgebra, x, y=None) -> "PairSetting":
        x = s_alg.element(x)
        if y is None:
            y = exact_zero_divisor_partner(x)
        else:
            y = s_alg.element(y)
            if not is_exact_pair(x, y):
                raise HypothesisFails(f"({x}, {y}) is not a pair of exact zero-divisors")
        if not residue_field_gate(s_alg):
            raise HypothesisFails("residue field is not the prime field")
        r_alg, surj = quotient_by_element(s_alg, x)
        return cls(s_alg, x, y, r_alg, surj)

    @property
    def minimal_generators(self) -> bool:
        return self.x.is_minimal_generator and self.y.is_minimal_generator

    @property
    def self_paired(self) -> bool:
        return self.x == self.y

    def ring_module(self) -> ModuleRep:
        """R = S/(x) as an S-module."""
        sfree = free(self.S, 1)
        return quotient(sfree, sfree.act(self.x))[0]

    def over_s(self, n: ModuleRep) -> ModuleRep:
        return inflate(n, self.surj)

    def label(self) -> str:
        return f"({self.x}, {self.y})"


def _lemma_expectations(setting: PairSetting, n: ModuleRep):
    ann, image, quo = mult_kernel_image(setting.y, setting.over_s(n))
    return n.dim, quo.dim, ann.dim


def verify_change_of_rings(setting: PairSetting, n: ModuleRep, q: int = 6, name: str = "N") -> Report:
    """Tor^S_j(R, N) and Ext^j_S(R, N) against N, N/yN, Ann_N(y)."""
    rep = Report(f"lemma {setting.label()} N={name}")
    ns = setting.over_s(n)
    whole, quo, ann = _lemma_expectations(setting, n)
    rmod = setting.ring_module()
    f = minimal_resolution(rmod, q + 1)
    tor = tor_dims(rmod, ns, (0, q), f)
    ext = ext_dims(rmod, ns, (0, q), f)
    for j in range(q + 1):
        exp = whole if j == 0 else (quo if j % 2 else ann)
        rep.add(f"Tor_{j}", exp, tor[j])
    for j in range(q + 1):
        exp = whole if j == 0 else (ann if j % 2 else quo)
        rep.add(f"Ext^{j}", exp, ext[j])
    return rep


def _fail(rep: Report, reason: str, strict: bool) -> Report:
    rep.hypothesis = f"failed: {reason}"
    if strict:
        raise HypothesisFails(reason)
    return rep


def verify_vanishing_transfer(setting: PairSetting, m: ModuleRep, n: ModuleRep, window: int = 9,
                              names=("M", "N"), strict: bool = True, side: str = "both") -> list:
    """Vanishing over R in degrees 1..window forces Tor^S_i = M (x) N and Ext^i_S = Hom(M, N)
    for 1 <= i <= window - 1.  Returns one report per side ("tor", "ext")."""
    if window < 2:
        raise ValueError("the vanishing window must have length at least 2")
    ms, ns = setting.over_s(m), setting.over_s(n)
    out = []
    y_kills = not ns.act(setting.y).any()
    sides = ("tor", "ext") if side == "both" else (side,)
    for which in sides:
        rep = Report(f"transfer-{which} {setting.label()} M={names[0]} N={names[1]}")
        out.append(rep)
        if not y_kills:
            _fail(rep, "yN != 0", strict)
            continue
        dims_fn = tor_dims if which == "tor" else ext_dims
        # probe a short window first: resolutions over R can grow fast
        bad = []
        for top in sorted({min(2, window), window}):
            over_r = dims_fn(m, n, (1, top), ring="R")
            bad = [i for i in over_r.indices() if over_r[i]]
            if bad:
                break
        if bad:
            _fail(rep, f"{which} over R does not vanish at i={bad[0]}", strict)
            continue
        rep.notes.append(f"hypothesis window 1..{window} vanishes over R")
        if which == "tor":
            target = tensor(ms, ns).dim
            over_s = tor_dims(ms, ns, (1, window - 1), ring="S")
            label = "Tor_{}"
        else:
            target = hom(ms, ns).dim
            over_s = ext_dims(ms, ns, (1, window - 1), ring="S")
            label = "Ext^{}"
        for i in over_s.indices():
            rep.add(label.format(i), target, over_s[i])
        if which == "tor" and m.dim and n.dim:
            for i in over_s.indices():
                rep.add(f"Tor_{i} != 0", ">=1", over_s[i], over_s[i] >= 1)
    return out


def verify_nonvanishing(setting: PairSetting, m: ModuleRep, n: ModuleRep, horizon: int = 8,
                        names=("M", "N"), strict: bool = True, degree_limit: int | None = None) -> Report:
    """Tor^S_i(M, N) != 0 for 0 <= i <= horizon when x, y are minimal generators of m."""
    rep = Report(f"nonvanishing {setting.label()} M={names[0]} N={names[1]}")
    if not setting.minimal_generators:
        return _fail(rep, "x or y lies in m^2", strict)
    if not m.dim or not n.dim:
        return _fail(rep, "M or N is zero", strict)
    ms, ns = setting.over_s(m), setting.over_s(n)
    if ns.act(setting.y).any():
        return _fail(rep, "yN != 0", strict)
    prof = tor_dims(ms, ns, (0, horizon), degree_limit=degree_limit, ring="S")
    if prof.lower_bound:
        rep.notes.append(f"resolution cut at internal degree {degree_limit}; values are lower bounds")
    for i in prof.indices():
        shown = f">={prof[i]}" if prof.lower_bound else prof[i]
        rep.add(f"Tor_{i}", ">=1", shown, prof[i] >= 1)
    return rep


def verify_betti_bounds(setting: PairSetting, m: ModuleRep, n: ModuleRep, horizon: int = 8,
                        names=("M", "N"), strict: bool = True) -> Report:
    """beta^R_n - sum_{i<=n-2} beta^R_i <= beta^S_n <= sum_{i<=n} beta^R_i, with
    beta^A_i(M, N) = dim Tor^A_i(M, N); plus the Poincare-series equality
    beta^S_n(M) = sum_{i<=n} beta^R_i(M) when x and y are minimal generators."""
    rep = Report(f"betti {setting.label()} M={names[0]} N={names[1]}")
    ms, ns = setting.over_s(m), setting.over_s(n)
    if ns.act(setting.y).any():
        return _fail(rep, "yN != 0", strict)
    br = tor_dims(m, n, (0, horizon), ring="R").dims
    bs = tor_dims(ms, ns, (0, horizon), ring="S").dims
    for k in range(horizon + 1):
        lower = max(0, br[k] - sum(br[: max(0, k - 1)]))
        upper = sum(br[: k + 1])
        rep.add(f"lower {k}", f"{lower}<=", bs[k], lower <= bs[k])
        rep.add(f"upper {k}", f"<={upper}", bs[k], bs[k] <= upper)
    if setting.minimal_generators:
        fr = minimal_resolution(m, horizon)
        fs = minimal_resolution(ms, horizon)
        for k in range(horizon + 1):
            rep.add(f"equality {k}", sum(fr.ranks[: k + 1]), fs.ranks[k])
    else:
        rep.notes.append("x or y lies in m^2: Poincare-series equality not asserted")
    return rep


def betti_routes(m: ModuleRep, horizon: int) -> tuple[list, list, list]:
    """Betti numbers three ways: ranks of the resolution, dim Tor_i(M,k), dim Ext^i(M,k)."""
    k = residue_field(m.algebra)
    f = minimal_resolution(m, horizon + 1)
    tor = tor_dims(m, k, (0, horizon), f).dims
    ext = ext_dims(m, k, (0, horizon), f).dims
    return list(f.ranks[: horizon + 1]), tor, ext

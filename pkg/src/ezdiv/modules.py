"""Finitely generated modules as k-spaces with an algebra action.

A :class:`ModuleRep` stores one ``d x d`` action matrix per basis element of
the algebra.  Free modules ``A^n`` use the layout ``index = g * dim A + l``
(generator ``g``, basis coordinate ``l``); maps between free modules are
"algebra matrices": int arrays of shape ``(rows, cols, dim A)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .algebra import AlgebraSurjection, Element, LocalAlgebra
from .errors import AlgebraMismatch
from .linalg import Subspace


class ModuleRep:
    def __init__(self, algebra: LocalAlgebra, actions: np.ndarray, degrees=None):
        actions = np.asarray(actions, dtype=np.int64) % algebra.p
        if actions.ndim != 3 or actions.shape[0] != algebra.dim or actions.shape[1] != actions.shape[2]:
            raise ValueError(f"bad action array shape {actions.shape} for algebra of dim {algebra.dim}")
        self.algebra = algebra
        self.actions = actions
        # optional internal degrees of the k-basis; kept only when consistent
        self.degrees = None
        if degrees is not None and algebra.is_graded:
            degrees = np.asarray(degrees, dtype=np.int64).reshape(-1)
            if len(degrees) == self.dim and _degrees_fit(actions, degrees, algebra.basis_degrees):
                self.degrees = degrees

    @property
    def dim(self) -> int:
        return self.actions.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        return f"ModuleRep(dim={self.dim}, over {self.algebra!r})"

    def act(self, a) -> np.ndarray:
        """Matrix of the action of an algebra element (or coordinate vector)."""
        v = a.coords if isinstance(a, Element) else np.asarray(a, dtype=np.int64)
        return np.tensordot(v, self.actions, axes=1) % self.p

    @cached_property
    def generator_actions(self) -> np.ndarray:
        return np.array([self.act(g) for g in self.algebra.generator_coords]).reshape(
            -1, self.dim, self.dim
        )

    def check(self) -> bool:
        """Unit acts as identity, actions commute and respect the structure constants."""
        p, a = self.p, self.actions
        if not np.array_equal(a[0], np.eye(self.dim, dtype=np.int64)):
            return False
        prods = np.einsum("iab,jbc->ijac", a, a) % p
        expect = np.einsum("ijl,lac->ijac", self.algebra.table, a) % p
        return bool(np.array_equal(prods, expect))

    def is_zero(self) -> bool:
        return self.dim == 0


def _degrees_fit(actions, degrees, alg_degrees) -> bool:
    for l, A in enumerate(actions):
        rows, cols = np.nonzero(A)
        if np.any(degrees[rows] != degrees[cols] + alg_degrees[l]):
            return False
    return True


def _homogeneous_degrees(vectors, degrees):
    """Degree of each column if every column is homogeneous, else None."""
    if degrees is None:
        return None
    out = []
    for col in np.asarray(vectors).T:
        ds = set(degrees[np.flatnonzero(col)].tolist())
        if len(ds) > 1:
            return None
        out.append(ds.pop() if ds else 0)
    return np.array(out, dtype=np.int64)


def _same_algebra(*mods):
    a = mods[0].algebra
    for m in mods[1:]:
        if not a.same_as(m.algebra):
            raise AlgebraMismatch("modules live over different algebras")


def zero_module(a: LocalAlgebra) -> ModuleRep:
    return ModuleRep(a, np.zeros((a.dim, 0, 0), dtype=np.int64))


def free(a: LocalAlgebra, rank: int, gen_degrees=None) -> ModuleRep:
    eye = np.eye(rank, dtype=np.int64)
    g = np.zeros(rank, dtype=np.int64) if gen_degrees is None else np.asarray(gen_degrees, dtype=np.int64)
    degrees = (g[:, None] + a.basis_degrees[None, :]).reshape(-1)
    return ModuleRep(a, np.array([np.kron(eye, L) for L in a.mult_matrices]).reshape(
        a.dim, rank * a.dim, rank * a.dim), degrees)


def residue_field(a: LocalAlgebra) -> ModuleRep:
    acts = np.zeros((a.dim, 1, 1), dtype=np.int64)
    acts[0, 0, 0] = 1
    return ModuleRep(a, acts, [0])


def direct_sum(*mods: ModuleRep) -> ModuleRep:
    _same_algebra(*mods)
    a = mods[0].algebra
    d = sum(m.dim for m in mods)
    acts = np.zeros((a.dim, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        acts[:, off:off + m.dim, off:off + m.dim] = m.actions
        off += m.dim
    degs = None
    if all(m.degrees is not None for m in mods):
        degs = np.concatenate([m.degrees for m in mods]) if mods else None
    return ModuleRep(a, acts, degs)


def submodule(n: ModuleRep, spanning: np.ndarray) -> tuple[ModuleRep, Subspace]:
    """The submodule spanned (over k) by the columns, which must be closed under the action."""
    w = Subspace(np.asarray(spanning, dtype=np.int64) % n.p, n.p)
    b = w.basis
    acts = np.array([w.coordinates(A @ b % n.p) for A in n.actions]).reshape(
        n.algebra.dim, w.dim, w.dim)
    degs = None
    if _homogeneous_degrees(spanning, n.degrees) is not None:
        degs = n.degrees[w.pivots]
    return ModuleRep(n.algebra, acts, degs), w


def quotient(n: ModuleRep, spanning: np.ndarray) -> tuple[ModuleRep, Subspace]:
    w = Subspace(np.asarray(spanning, dtype=np.int64) % n.p, n.p)
    q, s = w.quotient_map(), w.section()
    acts = np.array([q @ A @ s % n.p for A in n.actions]).reshape(
        n.algebra.dim, len(w.nonpivots), len(w.nonpivots))
    degs = None
    if _homogeneous_degrees(spanning, n.degrees) is not None:
        degs = n.degrees[w.nonpivots]
    return ModuleRep(n.algebra, acts, degs), w


# -- maps between free modules -------------------------------------------


def blockify(mat: np.ndarray, actions: np.ndarray, p: int) -> np.ndarray:
    """k-linear matrix of an algebra matrix acting on copies of a module.

    ``mat`` has shape (rows, cols, dim A); ``actions`` is a module's action
    array.  The result maps N^cols to N^rows.
    """
    r, c, _ = mat.shape
    d = actions.shape[1]
    if r == 0 or c == 0 or d == 0:
        return np.zeros((r * d, c * d), dtype=np.int64)
    t = np.tensordot(mat, actions, axes=([2], [0])) % p  # r, c, a, b
    return np.ascontiguousarray(t.transpose(0, 2, 1, 3)).reshape(r * d, c * d)


def linearize(mat: np.ndarray, a: LocalAlgebra) -> np.ndarray:
    """k-linear matrix of an algebra matrix between free modules."""
    return blockify(mat, a.mult_matrices, a.p)


def amatmul(x: np.ndarray, y: np.ndarray, a: LocalAlgebra) -> np.ndarray:
    """Product of algebra matrices."""
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"cannot compose {x.shape} with {y.shape}")
    if x.shape[1] == 0:
        return np.zeros((x.shape[0], y.shape[1], a.dim), dtype=np.int64)
    r, k, dA = x.shape
    c = y.shape[1]
    # yt[k, c, i, l] = sum_j y[k, c, j] * table[i, j, l]
    yt = np.tensordot(y, a.table, axes=([2], [1])) % a.p
    yt = np.ascontiguousarray(yt.transpose(0, 2, 1, 3)).reshape(k * dA, c * dA)
    out = linalg.matmul(x.reshape(r, k * dA), yt, a.p)
    return out.reshape(r, c, dA)


def vectors_to_amatrix(v: np.ndarray, a: LocalAlgebra) -> np.ndarray:
    """Columns of v (elements of A^n) as the columns of an algebra matrix."""
    n = v.shape[0] // a.dim
    return np.ascontiguousarray(v.reshape(n, a.dim, v.shape[1]).transpose(0, 2, 1))


def amatrix_map(mat: np.ndarray, surj_matrix: np.ndarray, p: int) -> np.ndarray:
    """Apply a k-linear map between algebras entrywise (e.g. a projection or section)."""
    return np.tensordot(mat, surj_matrix, axes=([2], [1])) % p


# -- presentations --------------------------------------------------------


@dataclass
class ModulePresentation:
    """Cokernel of ``relations``: an algebra matrix of shape (rank, m, dim A)."""

    algebra: LocalAlgebra
    rank: int
    relations: np.ndarray

    def __post_init__(self):
        rel = np.asarray(self.relations, dtype=np.int64)
        if rel.size == 0:
            rel = rel.reshape(self.rank, 0, self.algebra.dim)
        if rel.shape[0] != self.rank or rel.shape[2] != self.algebra.dim:
            raise ValueError(f"relation matrix shape {rel.shape} does not fit rank {self.rank}")
        self.relations = rel % self.algebra.p

    @classmethod
    def from_columns(cls, algebra: LocalAlgebra, rank: int, columns: list) -> "ModulePresentation":
        rel = np.zeros((rank, len(columns), algebra.dim), dtype=np.int64)
        for j, col in enumerate(columns):
            if len(col) != rank:
                raise ValueError(f"relation {j} has {len(col)} entries, expected {rank}")
            for i, entry in enumerate(col):
                rel[i, j] = algebra.element(entry).coords
        return cls(algebra, rank, rel)


def realize(pres: ModulePresentation) -> ModuleRep:
    a = pres.algebra
    mod, _ = quotient(free(a, pres.rank), linearize(pres.relations, a))
    return mod


def inflate(m: ModuleRep, surj: AlgebraSurjection) -> ModuleRep:
    """View an R-module as an S-module through S -> R."""
    if not m.algebra.same_as(surj.target):
        raise AlgebraMismatch("module is not over the target of the surjection")
    acts = np.einsum("lb,lij->bij", surj.proj, m.actions) % m.p
    return ModuleRep(surj.source, acts, m.degrees)


def mult_kernel_image(y, n: ModuleRep) -> tuple[ModuleRep, ModuleRep, ModuleRep]:
    """(Ann_N(y), yN, N/yN)"""
    ymat = n.act(y)
    ann, _ = submodule(n, linalg.kernel_basis(ymat, n.p))
    image, _ = submodule(n, ymat)
    quo, _ = quotient(n, ymat)
    return ann, image, quo


def tensor(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    _same_algebra(m, n)
    p = m.p
    im, iN = np.eye(m.dim, dtype=np.int64), np.eye(n.dim, dtype=np.int64)
    rels = [np.kron(am, iN) - np.kron(im, an) for am, an in zip(m.generator_actions, n.generator_actions)]
    ambient = ModuleRep(m.algebra, np.array([np.kron(A, iN) for A in m.actions]).reshape(
        m.algebra.dim, m.dim * n.dim, m.dim * n.dim))
    spanning = np.hstack(rels) % p if rels else np.zeros((m.dim * n.dim, 0), dtype=np.int64)
    out, _ = quotient(ambient, spanning)
    return out


def hom(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """Hom_A(M, N) as the space of d_N x d_M matrices commuting with the action."""
    _same_algebra(m, n)
    p = m.p
    im, iN = np.eye(m.dim, dtype=np.int64), np.eye(n.dim, dtype=np.int64)
    eqs = [np.kron(an, im) - np.kron(iN, am.T) for am, an in zip(m.generator_actions, n.generator_actions)]
    size = m.dim * n.dim
    if eqs:
        sol = linalg.kernel_basis(np.vstack(eqs) % p, p)
    else:
        sol = np.eye(size, dtype=np.int64)
    ambient = ModuleRep(m.algebra, np.array([np.kron(A, im) for A in n.actions]).reshape(
        m.algebra.dim, size, size))
    out, _ = submodule(ambient, sol)
    return out


def minimal_generators(m: ModuleRep) -> tuple[int, np.ndarray]:
    """(mu, gens): mu = dim M/mM and a d x mu matrix of generator vectors.

    The generators are the standard vectors completing the reduced basis
    of mM, so the choice is deterministic.
    """
    mm = radical(m)
    gens = mm.section()
    return gens.shape[1], gens


def radical(m: ModuleRep) -> Subspace:
    """mM as a subspace of M."""
    if m.dim == 0 or not len(m.generator_actions):
        return Subspace(np.zeros((m.dim, 0), dtype=np.int64), m.p)
    return Subspace(np.hstack(list(m.generator_actions)) % m.p, m.p)


def surjection_from_free(m: ModuleRep, gens: np.ndarray) -> np.ndarray:
    """k-matrix of A^mu -> M sending the g-th free generator to gens[:, g]."""
    dA = m.algebra.dim
    mu = gens.shape[1]
    if mu == 0 or m.dim == 0:
        return np.zeros((m.dim, mu * dA), dtype=np.int64)
    t = np.einsum("lij,jg->igl", m.actions, gens) % m.p
    return t.reshape(m.dim, mu * dA)


def random_presentation(a: LocalAlgebra, rng: random.Random, max_rank: int = 3,
                        max_relations: int = 4) -> ModulePresentation:
    """Entries drawn uniformly from {0} and the monomial basis of m."""
    rank = rng.randint(1, max_rank)
    count = rng.randint(0, max_relations)
    choices = [None] + a.max_ideal_indices
    rel = np.zeros((rank, count, a.dim), dtype=np.int64)
    for c in range(count):
        for r in range(rank):
            pick = rng.choice(choices)
            if pick is not None:
                rel[r, c, pick] = 1
    return ModulePresentation(a, rank, rel)


def action_invariants(m: ModuleRep) -> list:
    """Traces and ranks of every basis element's action (isomorphism invariants)."""
    return [(int(np.trace(A) % m.p), linalg.rank(A, m.p)) for A in m.actions]

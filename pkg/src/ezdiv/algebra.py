"""Finite-dimensional local algebras given by presentations k[x]/I.

An algebra carries its monomial basis (unit first) and the structure
constants ``table[i, j, l]`` (coefficient of ``b_l`` in ``b_i * b_j``).
Elements are coordinate vectors; ideals are subspaces closed under
multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import (
    AnnihilatorNotPrincipal,
    AnnihilatorZero,
    InfiniteDimensional,
    NotCommutativeOrAssociative,
    NotInMaximalIdeal,
    NotLocal,
    PartnerConditionFails,
    ZeroElement,
)
from .linalg import Subspace
from .poly import PolyRing


class LocalAlgebra:
    def __init__(self, ring: PolyRing, relations: list, gb: list, basis: list, table: np.ndarray):
        self.ring = ring
        self.relations = relations
        self.gb = gb
        self.basis = basis
        self.table = table
        self._check()

    @classmethod
    def from_presentation(cls, names, relations, p: int = linalg.DEFAULT_PRIME,
                          order: str = "degrevlex", degree_cap: int = 20) -> "LocalAlgebra":
        ring = PolyRing(tuple(names), linalg.check_prime(p), order, degree_cap)
        rels = [ring.parse(r) if isinstance(r, str) else dict(r) for r in relations]
        gb = ring.buchberger(rels)
        basis = ring.standard_monomials(gb)
        if not basis:
            raise NotLocal("the ideal is the whole ring; the quotient is zero")
        return cls(ring, rels, gb, basis, ring.multiplication_table(gb, basis))

    def _check(self):
        d = self.dim
        if self.basis[0] != (0,) * self.ring.nvars:
            raise NotLocal("the unit is not a standard monomial")
        t = self.table
        if not np.array_equal(t, t.transpose(1, 0, 2)):
            raise NotCommutativeOrAssociative("structure constants are not commutative")
        # (b_i b_j) b_k == b_i (b_j b_k)
        left = np.einsum("ijl,lkm->ijkm", t, t) % self.p
        right = np.einsum("jkl,ilm->ijkm", t, t) % self.p
        if not np.array_equal(left, right):
            raise NotCommutativeOrAssociative("structure constants are not associative")
        if not np.array_equal(t[0], np.eye(d, dtype=np.int64)):
            raise NotCommutativeOrAssociative("basis element 0 is not the unit")
        if self.generator_coords[:, 0].any():
            raise NotLocal("a variable is a unit in the quotient (the ideal is not supported at the origin)")
        if self.nilpotency_index is None:
            raise NotLocal("the span of the non-unit monomials is not nilpotent")

    # -- basic data -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> tuple:
        return self.ring.names

    def __repr__(self):
        rels = ", ".join(self.ring.format(r) for r in self.relations)
        return f"LocalAlgebra(k[{','.join(self.names)}]/({rels}), dim={self.dim}, p={self.p})"

    def same_as(self, other: "LocalAlgebra") -> bool:
        return (
            self is other
            or (
                self.ring == other.ring
                and self.basis == other.basis
                and np.array_equal(self.table, other.table)
            )
        )

    @cached_property
    def mult_matrices(self) -> np.ndarray:
        """``L[i]`` is the matrix of multiplication by ``b_i`` (acting on columns)."""
        return np.ascontiguousarray(self.table.transpose(0, 2, 1))

    def mult_matrix(self, coords) -> np.ndarray:
        v = np.asarray(coords, dtype=np.int64) % self.p
        return np.tensordot(v, self.mult_matrices, axes=1) % self.p

    def multiply(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijl->l", np.asarray(a), np.asarray(b), self.table) % self.p

    @cached_property
    def basis_degrees(self) -> np.ndarray:
        return np.array([sum(m) for m in self.basis], dtype=np.int64)

    @cached_property
    def is_graded(self) -> bool:
        """True when every Gröbner basis element is homogeneous in the standard grading."""
        return all(len({sum(m) for m in g}) == 1 for g in self.gb)

    @cached_property
    def max_ideal_indices(self) -> list:
        return list(range(1, self.dim))

    @cached_property
    def generator_coords(self) -> np.ndarray:
        """Rows are the coordinates of the variables (they generate m)."""
        rows = [
            self.ring.coordinates(self.ring.normal_form(self.ring.var(i), self.gb), self.basis)
            for i in range(self.ring.nvars)
        ]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.dim)

    @cached_property
    def generator_mult_matrices(self) -> np.ndarray:
        return np.array([self.mult_matrix(g) for g in self.generator_coords]).reshape(
            -1, self.dim, self.dim
        )

    @cached_property
    def max_ideal(self) -> "Ideal":
        return Ideal(self, np.eye(self.dim, dtype=np.int64)[:, 1:])

    @cached_property
    def max_ideal_squared(self) -> "Ideal":
        return self.max_ideal.times_max_ideal()

    @cached_property
    def nilpotency_index(self) -> int | None:
        """Smallest t with m^t = 0, or None if m is not nilpotent."""
        power = np.eye(self.dim, dtype=np.int64)[:, 1:]
        t = 1
        while power.shape[1]:
            if t > self.dim:
                return None
            prods = [self.mult_matrices[i] @ power for i in self.max_ideal_indices]
            nxt = linalg.column_space(np.hstack(prods) % self.p, self.p) if prods else power[:, :0]
            if nxt.shape[1] == power.shape[1] and nxt.shape[1] > 0:
                return None
            power = nxt
            t += 1
        return t if self.dim > 1 else 1

    # -- elements ----------------------------------------------------------

    def element(self, value) -> "Element":
        if isinstance(value, Element):
            if not value.algebra.same_as(self):
                raise ValueError("element belongs to a different algebra")
            return value
        if isinstance(value, str):
            f = self.ring.normal_form(self.ring.parse(value), self.gb)
            return Element(self, self.ring.coordinates(f, self.basis))
        if isinstance(value, dict):
            f = self.ring.normal_form(value, self.gb)
            return Element(self, self.ring.coordinates(f, self.basis))
        return Element(self, np.asarray(value, dtype=np.int64))

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim, dtype=np.int64))

    def one(self) -> "Element":
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return Element(self, v)

    def basis_element(self, i: int) -> "Element":
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return Element(self, v)

    def polynomial(self, coords) -> dict:
        return {m: int(c) for m, c in zip(self.basis, np.asarray(coords) % self.p) if c}

    def format(self, coords) -> str:
        return self.ring.format(self.polynomial(coords))


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: LocalAlgebra, coords):
        c = np.asarray(coords, dtype=np.int64) % algebra.p
        if c.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coordinates, got shape {c.shape}")
        self.algebra = algebra
        self.coords = c

    def _wrap(self, other) -> "Element":
        if isinstance(other, Element):
            return other
        if isinstance(other, (int, np.integer)):
            return self.algebra.one() * int(other) if other != 1 else self.algebra.one()
        return self.algebra.element(other)

    def __add__(self, other):
        return Element(self.algebra, self.coords + self._wrap(other).coords)

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.algebra, self.coords - self._wrap(other).coords)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Element(self.algebra, self.coords * int(other))
        return Element(self.algebra, self.algebra.multiply(self.coords, self._wrap(other).coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra.same_as(other.algebra) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(tuple(self.coords))

    def __bool__(self):
        return bool(self.coords.any())

    def __repr__(self):
        return self.algebra.format(self.coords)

    @property
    def is_zero(self) -> bool:
        return not self.coords.any()

    @property
    def in_max_ideal(self) -> bool:
        return self.coords[0] == 0

    @property
    def is_minimal_generator(self) -> bool:
        """x is in m but not in m^2."""
        return self.in_max_ideal and not self.algebra.max_ideal_squared.contains(self)

    def mult_matrix(self) -> np.ndarray:
        return self.algebra.mult_matrix(self.coords)

    def polynomial(self) -> dict:
        return self.algebra.polynomial(self.coords)


class Ideal:
    """An ideal given as the k-span of the columns of ``spanning``."""

    def __init__(self, algebra: LocalAlgebra, spanning: np.ndarray):
        self.algebra = algebra
        self.space = Subspace(np.asarray(spanning, dtype=np.int64) % algebra.p, algebra.p)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def contains(self, x) -> bool:
        v = x.coords if isinstance(x, Element) else np.asarray(x)
        return self.space.contains(v.reshape(self.algebra.dim, -1))

    def is_ideal(self) -> bool:
        b = self.basis
        return all(self.space.contains(L @ b % self.algebra.p) for L in self.algebra.mult_matrices)

    def times_max_ideal(self) -> "Ideal":
        a = self.algebra
        b = self.basis
        if not b.shape[1] or not len(a.generator_mult_matrices):
            return Ideal(a, b[:, :0])
        return Ideal(a, np.hstack([L @ b for L in a.generator_mult_matrices]) % a.p)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.space == other.space

    def __le__(self, other: "Ideal") -> bool:
        return self.space <= other.space

    def __repr__(self):
        gens = [self.algebra.format(c) for c in self.basis.T]
        return f"Ideal(span{{{', '.join(gens)}}})"


def principal_ideal(x: Element) -> Ideal:
    return Ideal(x.algebra, x.mult_matrix())


def annihilator(x: Element) -> Ideal:
    return Ideal(x.algebra, linalg.kernel_basis(x.mult_matrix(), x.algebra.p))


def principal_generator(j: Ideal) -> Element | None:
    """A generator of ``j`` when dim j/mj <= 1, else None.

    The generator is the canonical representative, modulo mj, of the first
    reduced basis vector of j outside mj, scaled to leading coefficient 1.
    """
    a = j.algebra
    if j.dim == 0:
        return a.zero()
    mj = j.times_max_ideal()
    if j.dim - mj.dim > 1:
        return None
    for col in j.basis.T:
        if not mj.space.contains(col.reshape(-1, 1)):
            g = mj.space.reduce(col.reshape(-1, 1)).ravel()
            break
    lead = g[np.flatnonzero(g)[0]]
    g = g * linalg.inverse_mod(lead, a.p) % a.p
    return Element(a, g)


def exact_zero_divisor_partner(x: Element) -> Element:
    """The partner y with Ann(x) = (y) and Ann(y) = (x), or raise why not."""
    if x.is_zero:
        raise ZeroElement("x is zero")
    if not x.in_max_ideal:
        raise NotInMaximalIdeal("x is a unit")
    ann = annihilator(x)
    if ann.dim == 0:
        raise AnnihilatorZero("Ann(x) = 0: x is not a zero-divisor")
    y = principal_generator(ann)
    if y is None:
        mj = ann.times_max_ideal()
        raise AnnihilatorNotPrincipal(
            f"Ann(x) needs {ann.dim - mj.dim} generators (dim Ann(x)/m Ann(x))"
        )
    if annihilator(y) != principal_ideal(x):
        raise PartnerConditionFails("Ann(y) differs from (x)")
    return y


def is_exact_pair(x: Element, y: Element) -> bool:
    if x.is_zero or y.is_zero or not x.in_max_ideal or not y.in_max_ideal:
        return False
    return annihilator(x) == principal_ideal(y) and annihilator(y) == principal_ideal(x)


@dataclass
class AlgebraSurjection:
    """The quotient map S -> R = S/(x) and its monomial section."""

    source: LocalAlgebra
    target: LocalAlgebra
    x: Element
    proj: np.ndarray      # dim R x dim S
    section: np.ndarray   # dim S x dim R

    def project(self, s) -> Element:
        v = s.coords if isinstance(s, Element) else np.asarray(s)
        return Element(self.target, self.proj @ v % self.target.p)

    def lift(self, r) -> Element:
        v = r.coords if isinstance(r, Element) else np.asarray(r)
        return Element(self.source, self.section @ v % self.source.p)


def quotient_by_element(s_alg: LocalAlgebra, x: Element) -> tuple[LocalAlgebra, AlgebraSurjection]:
    if x.is_zero or not x.in_max_ideal:
        raise ValueError("quotient_by_element needs a nonzero x in the maximal ideal")
    ring = s_alg.ring
    rels = list(s_alg.relations) + [x.polynomial()]
    gb = ring.buchberger(list(s_alg.gb) + [x.polynomial()])
    basis = ring.standard_monomials(gb)
    if not basis:
        raise InfiniteDimensional("quotient is zero")
    r_alg = LocalAlgebra(ring, rels, gb, basis, ring.multiplication_table(gb, basis))
    p = s_alg.p
    proj = np.zeros((r_alg.dim, s_alg.dim), dtype=np.int64)
    for j, m in enumerate(s_alg.basis):
        proj[:, j] = ring.coordinates(ring.normal_form({m: 1}, gb), basis)
    s_index = {m: i for i, m in enumerate(s_alg.basis)}
    section = np.zeros((s_alg.dim, r_alg.dim), dtype=np.int64)
    for j, m in enumerate(basis):
        section[s_index[m], j] = 1
    surj = AlgebraSurjection(s_alg, r_alg, x, proj % p, section)
    if r_alg.dim != s_alg.dim - principal_ideal(x).dim:
        raise NotLocal("dim S/(x) != dim S - dim (x)")
    return r_alg, surj

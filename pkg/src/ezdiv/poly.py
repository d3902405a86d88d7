"""Sparse multivariate polynomials over F_p and a Buchberger engine.

A polynomial is a ``dict`` mapping exponent tuples to nonzero residues.
The engine exists to turn a presentation ``k[x_1..x_n]/I`` into a monomial
basis plus structure constants; it does not do module Gröbner bases.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeBoundExceeded, InfiniteDimensional, ParseError

Monomial = tuple
Poly = dict

ORDERS = ("degrevlex", "lex")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    p: int
    order: str = "degrevlex"
    degree_cap: int = field(default=20, compare=False)

    def __post_init__(self):
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for n in self.names:
            if not _NAME.fullmatch(n):
                raise ValueError(f"bad variable name {n!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    # -- monomial order --------------------------------------------------

    def key(self, m: Monomial):
        if self.order == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def terms(self, f: Poly) -> list:
        """Terms as (coefficient, monomial), descending in the active order."""
        return [(f[m], m) for m in sorted(f, key=self.key, reverse=True)]

    def lead(self, f: Poly) -> Monomial:
        return max(f, key=self.key)

    # -- arithmetic ------------------------------------------------------

    def zero(self) -> Poly:
        return {}

    def one(self) -> Poly:
        return {(0,) * self.nvars: 1}

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): 1}

    def monomial(self, m: Monomial, c: int = 1) -> Poly:
        c %= self.p
        return {tuple(m): c} if c else {}

    def add(self, f: Poly, g: Poly, scale: int = 1) -> Poly:
        """f + scale*g"""
        out = dict(f)
        p = self.p
        for m, c in g.items():
            v = (out.get(m, 0) + scale * c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, g, -1)

    def scale(self, f: Poly, c: int) -> Poly:
        c %= self.p
        if not c:
            return {}
        return {m: v * c % self.p for m, v in f.items()}

    def mul_term(self, f: Poly, m: Monomial, c: int) -> Poly:
        c %= self.p
        if not c:
            return {}
        return {tuple(a + b for a, b in zip(u, m)): v * c % self.p for u, v in f.items()}

    def mul(self, f: Poly, g: Poly) -> Poly:
        out: Poly = {}
        p = self.p
        for u, a in f.items():
            for w, b in g.items():
                m = tuple(x + y for x, y in zip(u, w))
                v = (out.get(m, 0) + a * b) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    # -- text ------------------------------------------------------------

    def parse(self, text: str) -> Poly:
        """Parse ``3*x^2*y - y + 1`` style text."""
        s = "".join(text.split())
        if not s:
            raise ParseError(None, "empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        out: Poly = {}
        pos = 0
        for match in re.finditer(r"([+-])([^+-]*)", s):
            if match.start() != pos:
                raise ParseError(None, f"cannot parse {text!r}")
            pos = match.end()
            sign, body = match.groups()
            if not body:
                raise ParseError(None, f"dangling sign in {text!r}")
            coeff = 1 if sign == "+" else -1
            exps = [0] * self.nvars
            for factor in body.split("*"):
                if not factor:
                    raise ParseError(None, f"empty factor in {text!r}")
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in self.names:
                    raise ParseError(None, f"unknown variable {name!r}")
                if _ and not power.isdigit():
                    raise ParseError(None, f"bad exponent in {factor!r}")
                exps[self.names.index(name)] += int(power) if power else 1
            out = self.add(out, {tuple(exps): coeff % self.p})
        if pos != len(s):
            raise ParseError(None, f"cannot parse {text!r}")
        return out

    def format(self, f: Poly) -> str:
        if not f:
            return "0"
        parts = []
        half = self.p // 2
        for c, m in self.terms(f):
            neg = c > half
            c = self.p - c if neg else c
            factors = []
            for name, e in zip(self.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append(("- " if neg else "+ ") + "*".join(factors))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # -- Gröbner machinery -----------------------------------------------

    def normal_form(self, f: Poly, gb: list) -> Poly:
        """Fully reduce ``f`` by ``gb``; no term of the result is divisible by a leading term."""
        leads = [(self.lead(g), g) for g in gb if g]
        rem: Poly = {}
        f = dict(f)
        p = self.p
        while f:
            m = self.lead(f)
            c = f[m]
            for lm, g in leads:
                if all(a >= b for a, b in zip(m, lm)):
                    q = c * pow(g[lm], p - 2, p) % p
                    shift = tuple(a - b for a, b in zip(m, lm))
                    f = self.add(f, self.mul_term(g, shift, q), -1)
                    break
            else:
                rem[m] = c
                del f[m]
        return rem

    def spoly(self, f: Poly, g: Poly) -> Poly:
        lf, lg = self.lead(f), self.lead(g)
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        p = self.p
        a = self.mul_term(f, tuple(x - y for x, y in zip(lcm, lf)), pow(f[lf], p - 2, p))
        b = self.mul_term(g, tuple(x - y for x, y in zip(lcm, lg)), pow(g[lg], p - 2, p))
        return self.sub(a, b)

    def buchberger(self, gens: list) -> list:
        """Reduced Gröbner basis of the ideal generated by ``gens``.

        Pairs are taken smallest-lcm first; pairs with coprime leading
        monomials and pairs covered by the chain criterion are skipped.
        """
        basis = [self.monic(g) for g in gens if g]
        if not basis:
            return []
        pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

        def lcm_of(i, j):
            return tuple(max(a, b) for a, b in zip(self.lead(basis[i]), self.lead(basis[j])))

        while pairs:
            i, j = min(pairs, key=lambda ij: (self.key(lcm_of(*ij)), ij))
            pairs.discard((i, j))
            li, lj = self.lead(basis[i]), self.lead(basis[j])
            if all(a == 0 or b == 0 for a, b in zip(li, lj)):
                continue
            lcm = lcm_of(i, j)
            if any(
                k not in (i, j)
                and all(a >= b for a, b in zip(lcm, self.lead(basis[k])))
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
                for k in range(len(basis))
            ):
                continue
            r = self.normal_form(self.spoly(basis[i], basis[j]), basis)
            if not r:
                continue
            r = self.monic(r)
            if sum(self.lead(r)) > self.degree_cap:
                raise DegreeBoundExceeded(
                    f"Gröbner basis element of degree {sum(self.lead(r))} exceeds cap {self.degree_cap}"
                )
            n = len(basis)
            basis.append(r)
            pairs |= {(k, n) for k in range(n)}
        return self.reduce_basis(basis)

    def monic(self, f: Poly) -> Poly:
        return self.scale(f, pow(f[self.lead(f)], self.p - 2, self.p))

    def reduce_basis(self, basis: list) -> list:
        basis = [self.monic(g) for g in basis if g]
        leads = [self.lead(g) for g in basis]
        keep = []
        for i, lm in enumerate(leads):
            dominated = any(
                j != i
                and all(a >= b for a, b in zip(lm, leads[j]))
                and (lm != leads[j] or j < i)
                for j in range(len(basis))
            )
            if not dominated:
                keep.append(basis[i])
        out = []
        for i, g in enumerate(keep):
            others = keep[:i] + keep[i + 1 :]
            lm = self.lead(g)
            tail = self.normal_form({m: c for m, c in g.items() if m != lm}, others)
            out.append(self.add(tail, {lm: 1}))
        return sorted(out, key=lambda g: self.key(self.lead(g)))

    def standard_monomials(self, gb: list) -> list:
        """Monomials outside the leading-term ideal, ascending (1 first)."""
        leads = [self.lead(g) for g in gb if g]
        if any(sum(m) == 0 for m in leads):
            return []
        bounds = []
        for i, name in enumerate(self.names):
            pure = [m[i] for m in leads if all(e == 0 for k, e in enumerate(m) if k != i)]
            if not pure:
                raise InfiniteDimensional(
                    f"no pure power of {name} among leading terms; the quotient is not Artinian"
                )
            bounds.append(min(pure))
        if max(bounds, default=0) > self.degree_cap:
            raise DegreeBoundExceeded(f"basis degree exceeds cap {self.degree_cap}")
        out = [
            m
            for m in itertools.product(*(range(b) for b in bounds))
            if not any(all(a >= b for a, b in zip(m, lm)) for lm in leads)
        ]
        return sorted(out, key=self.key)

    def multiplication_table(self, gb: list, basis: list) -> np.ndarray:
        """``T[i, j]`` is the coordinate vector of NF(b_i * b_j)."""
        index = {m: k for k, m in enumerate(basis)}
        d = len(basis)
        table = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                prod = tuple(a + b for a, b in zip(basis[i], basis[j]))
                for m, c in self.normal_form({prod: 1}, gb).items():
                    table[i, j, index[m]] = c
        return table

    def coordinates(self, f: Poly, basis: list) -> np.ndarray:
        """Coordinates of an already reduced polynomial in ``basis``."""
        index = {m: k for k, m in enumerate(basis)}
        v = np.zeros(len(basis), dtype=np.int64)
        for m, c in f.items():
            v[index[m]] = c
        return v

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ezdiv.errors import InfiniteDimensional, ParseError
from ezdiv.poly import PolyRing

P = 32003
NOEMBDIM = ["V^2", "Z^2", "X*Y", "V*X+X*Z", "V*Y+Y*Z", "V*X+Y^2", "V*Y-X^2"]


def _rank_mod(rows, p):
    """Plain Gaussian elimination on lists of ints (independent of the engine)."""
    rows = [r[:] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def macaulay_dimension(ring: PolyRing, gens, top: int) -> list:
    """Hilbert function of a homogeneous quotient, degree by degree, from Macaulay matrices."""
    n = ring.nvars
    gens = [ring.parse(g) for g in gens]
    hilb = []
    for d in range(top + 1):
        monos = [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) == d]
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for g in gens:
            gd = sum(next(iter(g)))
            if gd > d:
                continue
            for mult in itertools.product(range(d - gd + 1), repeat=n):
                if sum(mult) != d - gd:
                    continue
                row = [0] * len(monos)
                for m, c in g.items():
                    row[index[tuple(a + b for a, b in zip(m, mult))]] = c
                rows.append(row)
        hilb.append(len(monos) - (_rank_mod(rows, P) if rows else 0))
    return hilb


def test_normal_form_examples():
    r = PolyRing(("x",), P)
    gb = [r.parse("x^2")]
    assert r.normal_form(r.parse("x^2"), gb) == {}
    assert r.normal_form(r.one(), gb) == r.one()
    gb3 = r.buchberger([r.parse("x^3")])
    assert r.normal_form(r.parse("x^4"), gb3) == {}
    f = r.parse("x^2+x")
    assert r.normal_form(f, gb3) == f


def test_buchberger_examples():
    r = PolyRing(("x", "y"), P)
    assert r.buchberger([r.parse("x")]) == [r.parse("x")]
    gens = [r.parse(g) for g in ("x^2", "x*y", "y^2")]
    assert sorted(map(str, r.buchberger(gens))) == sorted(map(str, gens))


def test_standard_monomials_examples():
    r = PolyRing(("x",), P)
    assert r.standard_monomials(r.buchberger([r.parse("x^3")])) == [(0,), (1,), (2,)]
    r3 = PolyRing(("x", "y", "z"), P)
    gb = r3.buchberger([r3.parse(g) for g in ("x^2", "y^2", "z^2", "y*z")])
    names = {r3.format({m: 1}) for m in r3.standard_monomials(gb)}
    assert names == {"1", "x", "y", "z", "x*y", "x*z"}
    r2 = PolyRing(("x", "y"), P)
    with pytest.raises(InfiniteDimensional):
        r2.standard_monomials(r2.buchberger([r2.parse("x^2")]))


def test_noembdim_dimension_matches_macaulay_oracle():
    ring = PolyRing(("V", "X", "Y", "Z"), P)
    hilb = macaulay_dimension(ring, NOEMBDIM, 5)
    assert hilb == [1, 4, 3, 0, 0, 0]
    gb = ring.buchberger([ring.parse(g) for g in NOEMBDIM])
    assert len(ring.standard_monomials(gb)) == sum(hilb) == 8


def test_multiplication_table_examples():
    r = PolyRing(("x",), P)
    gb = r.buchberger([r.parse("x^3")])
    basis = r.standard_monomials(gb)
    t = r.multiplication_table(gb, basis)
    for j in range(3):
        assert t[0, j].tolist() == [int(i == j) for i in range(3)]
    assert t[1, 1].tolist() == [0, 0, 1]
    assert not t[1, 2].any()


def test_parse_and_format_round_trip():
    r = PolyRing(("V", "X", "Y", "Z"), P)
    for text in NOEMBDIM + ["3*X^2*Y - Y + 1", "-V"]:
        f = r.parse(text)
        assert r.parse(r.format(f)) == f


@pytest.mark.parametrize("bad", ["", "x^", "x+", "2**x", "w"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        PolyRing(("x",), P).parse(bad)


polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, P - 1), max_size=5)


@given(polys, polys)
def test_ring_arithmetic_laws(f, g):
    r = PolyRing(("x", "y"), P)
    assert r.mul(f, g) == r.mul(g, f)
    assert r.add(f, g) == r.add(g, f)
    assert r.sub(r.add(f, g), g) == {m: c for m, c in f.items() if c % P}


@given(polys)
def test_normal_form_is_idempotent_and_reduced(f):
    r = PolyRing(("x", "y"), P)
    gb = r.buchberger([r.parse(g) for g in ("x^2", "x*y", "y^3")])
    nf = r.normal_form(f, gb)
    assert r.normal_form(nf, gb) == nf
    std = set(r.standard_monomials(gb))
    assert set(nf) <= std

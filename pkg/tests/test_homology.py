import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ezdiv import linalg
from ezdiv.errors import AlgebraMismatch, HypothesisFails
from ezdiv.formats import load_fixture
from ezdiv.homology import (
    PairSetting,
    betti_routes,
    ext_dims,
    residue_field_gate,
    tor_dims,
    verify_betti_bounds,
    verify_change_of_rings,
    verify_nonvanishing,
    verify_vanishing_transfer,
)
from ezdiv.modules import free, hom, random_presentation, realize, residue_field, tensor, zero_module


def _periodic_homology(setting, n, q):
    """Homology of N <-x- N <-y- N <-x- ... computed by hand (R resolves as x, y, x, ...)."""
    ns = setting.over_s(n)
    p = setting.S.p
    mx, my = ns.act(setting.x), ns.act(setting.y)

    def rk(m):
        return linalg.rank(m, p) if m.size else 0

    tor = [ns.dim - rk(mx)]
    for j in range(1, q + 1):
        out_map, in_map = (mx, my) if j % 2 else (my, mx)
        tor.append(ns.dim - rk(out_map) - rk(in_map))
    return tor


def test_tor_of_k_over_cube(cube):
    k = residue_field(cube)
    assert tor_dims(k, k, (0, 8)).dims == [1] * 9
    assert ext_dims(k, k, (0, 8)).dims == [1] * 9


def test_tor_against_free_module(fatpoint):
    m = realize(random_presentation(fatpoint, random.Random(2)))
    prof = tor_dims(m, free(fatpoint, 1), (0, 4))
    assert prof.dims == [m.dim, 0, 0, 0, 0]


def test_profile_indexing(cube):
    k = residue_field(cube)
    prof = tor_dims(k, k, (2, 5))
    assert list(prof.indices()) == [2, 3, 4, 5] and prof[3] == 1


def test_mismatched_algebras(cube, fatpoint):
    with pytest.raises(AlgebraMismatch):
        tor_dims(residue_field(cube), residue_field(fatpoint))


@pytest.mark.parametrize("pair", ["cube_pair", "fatpoint_pair", "noembdim_pair"])
def test_lemma_against_hand_complex(pair, request):
    setting = request.getfixturevalue(pair)
    rng = random.Random(5)
    mods = [residue_field(setting.R)] + [realize(random_presentation(setting.R, rng)) for _ in range(3)]
    for n in mods:
        rep = verify_change_of_rings(setting, n, q=4)
        assert rep.passed
        tor_rows = [int(r.computed) for r in rep.rows if r.index.startswith("Tor")]
        assert tor_rows == _periodic_homology(setting, n, 4)


def test_ring_module_tor_over_noembdim(noembdim_pair):
    k = residue_field(noembdim_pair.S)
    prof = tor_dims(noembdim_pair.ring_module(), k, (0, 6))
    assert prof.dims == [1] * 7


def test_pair_setting_rejects_non_pairs(cube):
    with pytest.raises(HypothesisFails):
        PairSetting.build(cube, "x^2", "x^2")


def test_residue_field_gate(cube, fatpoint):
    assert residue_field_gate(cube) and residue_field_gate(fatpoint)


def test_vanishing_transfer_free_module(cube_pair):
    r2, k = free(cube_pair.R, 2), residue_field(cube_pair.R)
    tor_rep, ext_rep = verify_vanishing_transfer(cube_pair, r2, k)
    assert tor_rep.passed and ext_rep.passed
    assert {r.computed for r in tor_rep.rows if not r.index.endswith("!= 0")} == {"2"}
    target = hom(cube_pair.over_s(r2), cube_pair.over_s(k)).dim
    assert {r.computed for r in ext_rep.rows} == {str(target)}


def test_vanishing_transfer_hypothesis_failure(cube_pair):
    k = residue_field(cube_pair.R)
    with pytest.raises(HypothesisFails):
        verify_vanishing_transfer(cube_pair, k, k)
    reps = verify_vanishing_transfer(cube_pair, k, k, strict=False)
    assert all(r.hypothesis.startswith("failed") and not r.passed for r in reps)
    with pytest.raises(ValueError):
        verify_vanishing_transfer(cube_pair, k, k, window=1)


def test_vanishing_transfer_matches_tensor(fatpoint_pair):
    s = fatpoint_pair
    m, n = free(s.R, 1), residue_field(s.R)
    (rep,) = verify_vanishing_transfer(s, m, n, window=5, side="tor")
    assert rep.passed
    assert rep.rows[0].expected == str(tensor(s.over_s(m), s.over_s(n)).dim)


def test_nonvanishing_gates(cube_pair, noembdim_pair):
    k = residue_field(cube_pair.R)
    with pytest.raises(HypothesisFails):
        verify_nonvanishing(cube_pair, k, k)
    zero = zero_module(noembdim_pair.R)
    rep = verify_nonvanishing(noembdim_pair, zero, residue_field(noembdim_pair.R), strict=False)
    assert rep.hypothesis.startswith("failed")


def test_nonvanishing_ring_module(noembdim_pair):
    r = free(noembdim_pair.R, 1)
    rep = verify_nonvanishing(noembdim_pair, r, residue_field(noembdim_pair.R), horizon=6)
    assert rep.passed
    assert [r.computed for r in rep.rows] == ["1"] * 7


def test_betti_bounds_fatpoint(fatpoint_pair):
    k = residue_field(fatpoint_pair.R)
    rep = verify_betti_bounds(fatpoint_pair, k, k, horizon=5)
    assert rep.passed
    eq = [int(r.computed) for r in rep.rows if r.index.startswith("equality")]
    assert eq == [2 ** (n + 1) - 1 for n in range(6)]


def test_betti_routes_agree(fatpoint):
    m = realize(random_presentation(fatpoint, random.Random(9)))
    a, b, c = betti_routes(m, 4)
    assert a == b == c


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_tor_symmetry(seed):
    a = load_fixture("fatpoint")
    rng = random.Random(seed)
    m = realize(random_presentation(a, rng))
    n = realize(random_presentation(a, rng))
    assert tor_dims(m, n, (0, 3)).dims == tor_dims(n, m, (0, 3)).dims


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_ext_zero_is_hom(seed):
    a = load_fixture("cube")
    rng = random.Random(seed)
    m = realize(random_presentation(a, rng))
    n = realize(random_presentation(a, rng))
    assert ext_dims(m, n, (0, 0)).dims == [hom(m, n).dim]
    assert tor_dims(m, n, (0, 0)).dims == [tensor(m, n).dim]

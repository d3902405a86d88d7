import numpy as np
import pytest

from ezdiv.errors import DivisionFails, HypothesisFails, ResolutionTooShort
from ezdiv.lifting import (
    Lifted,
    Obstructed,
    _scale,
    _square,
    canonical_endomorphism,
    divide_by,
    ext2_class,
    homotopy_residual,
    lift_module,
    null_homotopy,
    preimage_complex,
    random_twist,
    reduces_to_base,
    verify_lift,
)
from ezdiv.modules import amatrix_map, free, residue_field
from ezdiv.resolve import FreeComplex, _store, minimal_resolution, pad_with_trivial


def _setup(setting, m, n=4):
    f = minimal_resolution(m, n)
    pf = preimage_complex(f, setting.surj)
    return f, pf, canonical_endomorphism(pf)


def _cyclic_oracle(length, power):
    """M' = k[t]/(t^length) against R = S/(t^power), using only the Jordan block of t.

    M' (x) R = M'/t^power M' and Tor_1(M', R) = Ann_M'(t^power) / t^power M'.
    Returns (dim M' (x) R, dim Tor_1)."""
    j = np.eye(length, k=-1, dtype=np.int64)
    x = np.linalg.matrix_power(j, power)
    r = int(np.linalg.matrix_rank(x))
    return length - r, (length - r) - r


def test_residue_field_over_xquartic_is_obstructed(xquartic_pair):
    s = xquartic_pair
    k = residue_field(s.R)
    f, pf, endo = _setup(s, k)
    # d~ = (t) in every degree, d~ d~ = t^2 = x * 1, so s is the identity
    t = s.S.element("x").coords.tolist()
    assert all(pf.diff(i)[0, 0].tolist() == t for i in range(1, pf.length + 1))
    one = s.R.one().coords.tolist()
    assert all(endo[i][0, 0].tolist() == one for i in range(2, endo.top + 1))
    assert pf.check() and endo.check()
    obs = ext2_class(endo, f, k)
    assert not obs.is_zero and obs.ext_dim == 1
    for n in (2, 3, 4):
        assert null_homotopy(endo, f, n) is None
    res = lift_module(k, s, 8)
    assert isinstance(res, Obstructed) and res.status == "obstructed"
    assert res.obstruction.coordinates == obs.coordinates


def test_brute_force_no_lift_of_k_over_xquartic(xquartic_pair):
    # a lift of k is cyclic (Nakayama), and the cyclic S-modules are k[t]/(t^i), i = 1..4
    lifts = [i for i in range(1, 5) if _cyclic_oracle(i, 2) == (1, 0)]
    assert lifts == []
    assert isinstance(lift_module(residue_field(xquartic_pair.R), xquartic_pair, 4), Obstructed)


@pytest.mark.parametrize("power", [1, 2, 3])
def test_brute_force_matches_engine_over_truncated_polynomials(power):
    # S = k[t]/(t^(2 power)) with the self-paired x = t^power; R = k[t]/(t^power)
    from ezdiv.algebra import LocalAlgebra
    from ezdiv.homology import PairSetting

    a = LocalAlgebra.from_presentation(["t"], [f"t^{2 * power}"])
    s = PairSetting.build(a, f"t^{power}")
    assert s.self_paired
    k = residue_field(s.R)
    brute = [i for i in range(1, 2 * power + 1) if _cyclic_oracle(i, power) == (1, 0)]
    res = lift_module(k, s, 4)
    if brute:
        assert isinstance(res, Lifted) and res.module.dim in brute
    else:
        assert isinstance(res, Obstructed)
    # R itself always lifts, to S
    assert [i for i in range(1, 2 * power + 1) if _cyclic_oracle(i, power) == (power, 0)] == [2 * power]


@pytest.mark.parametrize("rank", [1, 2])
def test_free_modules_lift(xquartic_pair, rank):
    s = xquartic_pair
    res = lift_module(free(s.R, rank), s, 8)
    assert isinstance(res, Lifted) and res.status == "lifted"
    assert res.module.dim == rank * s.S.dim
    assert res.report.passed
    assert "all degrees" in res.certificate


def test_noembdim_residue_field_lifts(noembdim_pair):
    s = noembdim_pair
    k = residue_field(s.R)
    res = lift_module(k, s, 4)
    assert isinstance(res, Lifted)
    assert res.report.passed
    assert reduces_to_base(res.complex, minimal_resolution(k, 4), s.surj)
    assert all(not _square(res.complex, i).any() for i in range(2, res.complex.length + 1))


def test_lifting_sign(noembdim_pair):
    # d~ - x h~ squares to zero; d~ + x h~ does not
    s = noembdim_pair
    f, pf, endo = _setup(s, residue_field(s.R))
    h = null_homotopy(endo, f, 4)
    assert h is not None and homotopy_residual(endo, f, h, 4)
    for sign, expect_zero in ((-1, True), (1, False)):
        diffs = [_store((pf.diff(i) + sign * _scale(amatrix_map(h[i], s.surj.section, s.S.p), s.x)) % s.S.p)
                 for i in range(1, 5)]
        cx = FreeComplex(s.S, list(f.ranks), diffs)
        squares_zero = all(not _square(cx, i).any() for i in range(2, 5))
        assert squares_zero == expect_zero


def test_joint_and_staged_homotopies_agree(fatpoint_pair):
    s = fatpoint_pair
    f, pf, endo = _setup(s, residue_field(s.R), 3)
    joint = null_homotopy(endo, f, 3, method="joint")
    staged = null_homotopy(endo, f, 3, method="staged")
    assert (joint is None) == (staged is None)
    for h in (joint, staged):
        if h is not None:
            assert homotopy_residual(endo, f, h, 3)
    with pytest.raises(ValueError):
        null_homotopy(endo, f, 3, method="bogus")
    with pytest.raises(ResolutionTooShort):
        null_homotopy(endo, f, 9)


def test_class_independent_of_choices(noembdim_pair, xquartic_pair):
    rng = np.random.default_rng(0)
    for s in (noembdim_pair, xquartic_pair):
        k = residue_field(s.R)
        f, pf, endo = _setup(s, k, 3)
        base = ext2_class(endo, f, k)
        twisted = preimage_complex(f, s.surj, random_twist(pf, rng))
        assert twisted.check()
        for e in (canonical_endomorphism(twisted), canonical_endomorphism(pf, rng=rng)):
            assert e.check()
            assert ext2_class(e, f, k).is_zero == base.is_zero


def test_class_on_padded_resolution(xquartic_pair):
    s = xquartic_pair
    k = residue_field(s.R)
    f = minimal_resolution(k, 4)
    for j in (1, 2):
        g = pad_with_trivial(f, j)
        e = canonical_endomorphism(preimage_complex(g, s.surj))
        assert not ext2_class(e, g, k).is_zero


def test_divide_by(xquartic_pair):
    s = xquartic_pair
    x = s.x
    v = s.S.element("x^3").coords.reshape(-1, 1)
    u = divide_by(x, v)
    assert (x * s.S.element(u[:, 0])) == s.S.element(v[:, 0])
    with pytest.raises(DivisionFails):
        divide_by(x, s.S.element("x").coords.reshape(-1, 1))


def test_ext2_needs_length_three(xquartic_pair):
    s = xquartic_pair
    k = residue_field(s.R)
    f, pf, endo = _setup(s, k, 2)
    with pytest.raises(ResolutionTooShort):
        ext2_class(endo, f, k)


def test_lifting_needs_self_pair(cube_pair):
    with pytest.raises(HypothesisFails):
        lift_module(residue_field(cube_pair.R), cube_pair)


def test_verify_lift(xquartic_pair):
    s = xquartic_pair
    ok = verify_lift(free(s.S, 1), free(s.R, 1), s.surj, 4)
    assert ok.passed
    k_s = residue_field(s.S)
    bad = verify_lift(k_s, residue_field(s.R), s.surj, 4)
    assert not bad.passed
    assert [r.computed for r in bad.rows if r.index.startswith("Tor")] == ["1"] * 4

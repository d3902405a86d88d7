import functools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ezdiv import quotient_by_element
from ezdiv.errors import AlgebraMismatch
from ezdiv.formats import load_fixture
from ezdiv.modules import (
    ModulePresentation,
    amatmul,
    direct_sum,
    free,
    hom,
    inflate,
    linearize,
    minimal_generators,
    mult_kernel_image,
    random_presentation,
    realize,
    residue_field,
    submodule,
    tensor,
)


@functools.cache
def _ring(name):
    return load_fixture(name)


def _naive_amatmul(x, y, a):
    r, k, _ = x.shape
    c = y.shape[1]
    out = np.zeros((r, c, a.dim), dtype=object)
    for i in range(r):
        for j in range(c):
            acc = a.zero()
            for t in range(k):
                acc = acc + a.element(x[i, t]) * a.element(y[t, j])
            out[i, j] = acc.coords
    return out.astype(np.int64)


def test_realize_examples(cube):
    assert realize(ModulePresentation(cube, 1, np.zeros((1, 0, 3)))).dim == cube.dim
    assert realize(ModulePresentation.from_columns(cube, 1, [["1"]])).dim == 0
    r, _ = quotient_by_element(cube, cube.element("x^2"))
    k = realize(ModulePresentation.from_columns(r, 1, [["x"]]))
    assert k.dim == 1 and not k.generator_actions.any()


def test_inflate_examples(cube_pair):
    r = cube_pair.R
    rs = inflate(free(r, 1), cube_pair.surj)
    assert rs.dim == r.dim and rs.algebra is cube_pair.S
    ks = inflate(residue_field(r), cube_pair.surj)
    assert ks.dim == 1 and not ks.generator_actions.any()
    rng = random.Random(3)
    for _ in range(5):
        m = inflate(realize(random_presentation(r, rng)), cube_pair.surj)
        assert not m.act(cube_pair.x).any()
        assert m.check()


def test_mult_kernel_image_examples(fatpoint):
    n = realize(random_presentation(fatpoint, random.Random(1)))
    ann, image, quo = mult_kernel_image(fatpoint.zero(), n)
    assert (ann.dim, image.dim, quo.dim) == (n.dim, 0, n.dim)
    ann, image, quo = mult_kernel_image(fatpoint.one(), n)
    assert (ann.dim, image.dim, quo.dim) == (0, n.dim, 0)
    k = residue_field(fatpoint)
    ann, image, quo = mult_kernel_image(fatpoint.element("y"), k)
    assert (ann.dim, image.dim) == (1, 0)


def test_tensor_and_hom_examples(squarezero2):
    a = squarezero2
    k = residue_field(a)
    n = realize(random_presentation(a, random.Random(4)))
    assert tensor(free(a, 1), n).dim == n.dim
    assert tensor(k, k).dim == 1
    m, _ = submodule(free(a, 1), a.max_ideal.basis)
    assert tensor(m, k).dim == 2
    assert hom(free(a, 1), n).dim == n.dim
    assert hom(k, k).dim == 1
    a2 = type(a).from_presentation(["x"], ["x^2"])
    assert hom(residue_field(a2), free(a2, 1)).dim == 1


def test_minimal_generators_examples(squarezero2):
    a = squarezero2
    assert minimal_generators(free(a, 3))[0] == 3
    assert minimal_generators(residue_field(a))[0] == 1
    m, _ = submodule(free(a, 1), a.max_ideal.basis)
    assert minimal_generators(m)[0] == 2


def test_mismatched_algebras(cube, fatpoint):
    with pytest.raises(AlgebraMismatch):
        tensor(residue_field(cube), residue_field(fatpoint))


def test_direct_sum_dimension(fatpoint):
    k = residue_field(fatpoint)
    s = direct_sum(k, free(fatpoint, 2))
    assert s.dim == 1 + 2 * fatpoint.dim and s.check()


@given(st.integers(0, 10**6))
def test_amatmul_matches_naive(seed):
    a = _ring("fatpoint")
    rng = np.random.default_rng(seed)
    r, k, c = rng.integers(1, 4, size=3)
    x = rng.integers(0, a.p, size=(r, k, a.dim))
    y = rng.integers(0, a.p, size=(k, c, a.dim))
    assert np.array_equal(amatmul(x, y, a), _naive_amatmul(x, y, a))
    # and the k-linear matrices compose the same way
    assert np.array_equal(linearize(amatmul(x, y, a), a),
                          linearize(x, a) @ linearize(y, a) % a.p)


@given(st.integers(0, 10**6), st.sampled_from(["cube", "fatpoint", "noembdim"]))
def test_random_modules_are_modules(seed, name):
    a = _ring(name)
    pres = random_presentation(a, random.Random(seed))
    m = realize(pres)
    assert m.check()
    # Nakayama: mu(M) is at most the rank of the presentation
    mu, gens = minimal_generators(m)
    assert gens.shape[1] == mu <= pres.rank


@given(st.integers(0, 10**6))
def test_tensor_is_symmetric_in_dimension(seed):
    a = _ring("fatpoint")
    rng = random.Random(seed)
    m = realize(random_presentation(a, rng))
    n = realize(random_presentation(a, rng))
    assert tensor(m, n).dim == tensor(n, m).dim


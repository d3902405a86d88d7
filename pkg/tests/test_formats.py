import pytest

from ezdiv.errors import ParseError
from ezdiv.formats import (
    bundled_rings,
    fixture_path,
    format_module,
    format_ring,
    load_fixture,
    parse_module,
    parse_ring,
)
from ezdiv.modules import realize

NOEMBDIM = ["V^2", "Z^2", "X*Y", "V*X+X*Z", "V*Y+Y*Z", "V*X+Y^2", "V*Y-X^2"]


def test_bundled_rings():
    assert bundled_rings() == ["cube", "fatpoint", "noembdim", "squarezero2", "squarezero3", "xquartic"]


@pytest.mark.parametrize("name", bundled_rings())
def test_ring_round_trip(name):
    a = load_fixture(name)
    b = parse_ring(format_ring(a))
    assert a.same_as(b)
    assert format_ring(b) == format_ring(a)


def test_noembdim_relations_verbatim():
    text = fixture_path("noembdim").read_text()
    body = text.split("ideal\n", 1)[1].split("end", 1)[0].split()
    assert body == NOEMBDIM


@pytest.mark.parametrize("name", ["k", "r1", "r2"])
def test_module_round_trip(name, xquartic_pair):
    pres = parse_module(fixture_path(name), xquartic_pair.R)
    again = parse_module(format_module(pres), xquartic_pair.R)
    assert realize(pres).dim == realize(again).dim
    assert format_module(again) == format_module(pres)


def test_module_dimensions(cube_pair):
    r = cube_pair.R
    assert realize(parse_module(fixture_path("k"), r)).dim == 1
    assert realize(parse_module(fixture_path("r2"), r)).dim == 2 * r.dim


def test_prime_override():
    assert load_fixture("cube", prime=101).p == 101


RING_OK = "field p=101\nvars x y\nideal\nx^2\ny^2\nx*y\nend\n"


def test_parse_ring_from_text():
    a = parse_ring(RING_OK)
    assert a.dim == 3 and a.p == 101


@pytest.mark.parametrize("text,line", [
    ("field p=101\nvars x\nideal\nx^2\n", 3),          # unclosed block
    ("field p=101\nvars x\ncolour red\n", 3),          # unknown key
    ("field p=101\nvars x\nideal\nx^^2\nend\n", 4),    # bad polynomial
    ("field p=101\nvars x\nideal\nw^2\nend\n", 4),     # unknown variable
])
def test_malformed_ring(text, line):
    with pytest.raises(ParseError) as e:
        parse_ring(text)
    assert e.value.line == line


def test_missing_parts():
    with pytest.raises(ParseError):
        parse_ring("field p=101\nideal\nend\n")


@pytest.mark.parametrize("text", [
    "module rank=1\nrelations\n[x, x]\nend\n",
    "module rank=1\nrelations\n[x\nend\n",
    "module rank=1\nrelations\n[x]\n",
])
def test_malformed_module(text, cube):
    with pytest.raises(ParseError) as e:
        parse_module(text, cube)
    assert e.value.line is not None


def test_missing_fixture():
    with pytest.raises(FileNotFoundError):
        fixture_path("no-such-ring")

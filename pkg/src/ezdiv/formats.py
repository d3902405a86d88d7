"""Plain-text ring and module files.

Ring file::

    # comment
    field p=32003
    vars x y z
    order degrevlex      (optional; degrevlex or lex)
    ideal
    x^2
    y^2
    end

Module file (relations are columns of the presentation matrix)::

    module rank=2
    relations
    [x, 0]
    [y, x]
    end
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from . import linalg
from .algebra import LocalAlgebra
from .errors import EzdivError, ParseError
from .modules import ModulePresentation
from .poly import PolyRing

ORDERS = ("degrevlex", "lex")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _read(source) -> str:
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        return Path(source).read_text()
    return source


def _block(it, opener_line, name):
    """Collect lines until ``end``."""
    body = []
    for no, line in it:
        if line == "end":
            return body
        body.append((no, line))
    raise ParseError(opener_line, f"'{name}' block is not closed by 'end'")


def parse_ring(source, prime: int | None = None) -> LocalAlgebra:
    """Build the algebra described by a ring file (path or text).

    ``prime`` overrides the file's field line.
    """
    text = _read(source)
    p = names = None
    order = "degrevlex"
    relations = None
    it = _lines(text)
    for no, line in it:
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            m = re.fullmatch(r"p\s*=\s*(\d+)", rest)
            if not m:
                raise ParseError(no, "expected 'field p=<prime>'")
            p = int(m.group(1))
        elif key == "vars":
            names = rest.split()
            if not names:
                raise ParseError(no, "no variables listed")
            if len(set(names)) != len(names):
                raise ParseError(no, "repeated variable name")
            bad = [v for v in names if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v)]
            if bad:
                raise ParseError(no, f"bad variable name {bad[0]!r}")
        elif key == "order":
            if rest not in ORDERS:
                raise ParseError(no, f"unknown monomial order {rest!r}")
            order = rest
        elif key == "ideal" and not rest:
            if relations is not None:
                raise ParseError(no, "second 'ideal' block")
            relations = _block(it, no, "ideal")
        else:
            raise ParseError(no, f"unknown key {key!r}")
    if p is None:
        raise ParseError(None, "missing 'field p=<prime>' line")
    if names is None:
        raise ParseError(None, "missing 'vars' line")
    if relations is None:
        raise ParseError(None, "missing 'ideal' block")
    if prime is not None:
        p = prime
    # parse relations one by one so errors carry their line
    try:
        ring = PolyRing(tuple(names), linalg.check_prime(p), order)
    except (ValueError, EzdivError) as e:
        raise ParseError(None, str(e)) from None
    polys = []
    for no, line in relations:
        try:
            polys.append(ring.parse(line))
        except (ValueError, EzdivError) as e:
            raise ParseError(no, _reason(e)) from None
    return LocalAlgebra.from_presentation(names, polys, p, order)


def _reason(e: Exception) -> str:
    return e.reason if isinstance(e, ParseError) else str(e)


def format_ring(a: LocalAlgebra) -> str:
    ring = a.ring
    lines = [f"field p={a.p}", "vars " + " ".join(ring.names)]
    if ring.order != "degrevlex":
        lines.append(f"order {ring.order}")
    lines.append("ideal")
    lines += [ring.format(f) for f in a.relations]
    lines.append("end")
    return "\n".join(lines) + "\n"


def _split_vector(text: str, no: int) -> list:
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(no, "relation must be a bracketed vector like [x, 0]")
    inner = text[1:-1].strip()
    return [t.strip() for t in inner.split(",")] if inner else []


def parse_module(source, ring: LocalAlgebra) -> ModulePresentation:
    text = _read(source)
    rank = None
    columns = None
    it = _lines(text)
    for no, line in it:
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "module":
            m = re.fullmatch(r"rank\s*=\s*(\d+)", rest)
            if not m:
                raise ParseError(no, "expected 'module rank=<n>'")
            rank = int(m.group(1))
        elif key == "relations" and not rest:
            if rank is None:
                raise ParseError(no, "'relations' before 'module rank=<n>'")
            if columns is not None:
                raise ParseError(no, "second 'relations' block")
            columns = []
            for rno, rline in _block(it, no, "relations"):
                entries = _split_vector(rline, rno)
                if len(entries) != rank:
                    raise ParseError(rno, f"relation has {len(entries)} entries, expected {rank}")
                col = []
                for e in entries:
                    if not e:
                        raise ParseError(rno, "empty entry")
                    try:
                        col.append(ring.element(e).coords)
                    except (ValueError, EzdivError) as err:
                        raise ParseError(rno, _reason(err)) from None
                columns.append(col)
        else:
            raise ParseError(no, f"unknown key {key!r}")
    if rank is None:
        raise ParseError(None, "missing 'module rank=<n>' line")
    rel = np.zeros((rank, len(columns or []), ring.dim), dtype=np.int64)
    for j, col in enumerate(columns or []):
        for i, c in enumerate(col):
            rel[i, j] = c
    return ModulePresentation(ring, rank, rel)


def format_module(pres: ModulePresentation) -> str:
    a = pres.algebra
    lines = [f"module rank={pres.rank}", "relations"]
    for j in range(pres.relations.shape[1]):
        lines.append("[" + ", ".join(a.format(pres.relations[i, j]) for i in range(pres.rank)) + "]")
    lines.append("end")
    return "\n".join(lines) + "\n"



DATA_DIR = Path(__file__).parent / "data"


def fixture_path(name: str) -> Path:
    """A path on disk if it exists, else the bundled fixture of that name."""
    p = Path(name)
    if p.exists():
        return p
    for cand in (DATA_DIR / name, DATA_DIR / f"{name}.ring", DATA_DIR / f"{name}.mod"):
        if cand.exists():
            return cand
    raise FileNotFoundError(name)


def load_fixture(name: str, prime: int | None = None) -> LocalAlgebra:
    return parse_ring(fixture_path(name), prime)


def bundled_rings() -> list:
    return sorted(p.stem for p in DATA_DIR.glob("*.ring"))

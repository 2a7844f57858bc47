"""Readers for the algebra (.alg), module (.mod) and complex (.cx) file formats.

Module file:
    module T-41 over ALG-HER4
    dims 1:3 2:1 3:1 4:3
    map a = [[0, 1, 0]]

Complex file (rows of d index degree 0, columns degree -1):
    complex P-42 over ALG-GEN4
    summand gamma
    deg -1: P(3)
    deg 0: P(4)
    d = [[g]]
"""
import json
import logging
import os
import re
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from algebra.complexes import TwoTermComplex
from algebra.errors import ConfigError, ParseError, WorkbenchError
from algebra.modules import Representation
from algebra.quiver import BoundQuiverAlgebra, parse_algebra, parse_relation

from utils.config import FIXTURES_DIR

logger = logging.getLogger(__name__)

EXTENSIONS = (".alg", ".cx", ".mod")
_HEADER = re.compile(r"\s*(\S+)\s+over\s+(\S+)\s*$")
_TERM = re.compile(r"[+-]?[^+-]+")
_IDEMPOTENT = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*e(?:\((\S+?)\))?\s*$")
_PROJECTIVE = re.compile(r"P\((\S+?)\)")


def find_fixture(name, fixtures_dir=None):
    """Path of a file given directly or by fixture name, e.g. 'ALG-A3' or 'P-41'"""
    if os.path.isfile(name):
        return name
    folder = fixtures_dir or FIXTURES_DIR
    for ext in ("",) + EXTENSIONS:
        path = os.path.join(folder, name + ext)
        if os.path.isfile(path):
            return path
    raise ConfigError(f"No file or fixture named {name!r} in {folder}")


def _read(path):
    with open(path, "r") as f:
        return f.read()


@lru_cache(maxsize=None)
def _load_algebra(path, p):
    name = os.path.splitext(os.path.basename(path))[0]
    # the file name is the handle other files use after 'over'
    alg = parse_algebra(_read(path), p=p, name=name)
    logger.info(f"Loaded algebra {name} from {path}")
    return alg


def load_algebra(name, fixtures_dir=None, p=None) -> BoundQuiverAlgebra:
    """One algebra object per file and field, so modules and complexes over it agree"""
    return _load_algebra(os.path.abspath(find_fixture(name, fixtures_dir)), p)


def _lines(text):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield line_no, line


def _header(line, line_no, keyword):
    head, _, rest = line.strip().partition(" ")
    m = _HEADER.match(rest)
    if head != keyword or not m:
        raise ParseError(f"Expected '{keyword} <name> over <algebra>'", line_no, 1)
    return m.group(1), m.group(2)


def _matrix(text, line_no, column):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Cannot read matrix: {exc.msg}", line_no, column + exc.colno - 1)
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ParseError("Matrix must be a list of rows", line_no, column)
    if value and len({len(row) for row in value}) != 1:
        raise ParseError("Matrix rows have different lengths", line_no, column)
    return np.array(value, dtype=np.int64).reshape(len(value), len(value[0]) if value else 0)


def parse_module(text, algebra: BoundQuiverAlgebra) -> Representation:
    """Read a module file over an already loaded algebra"""
    name, dims, maps = "", None, {}
    for line_no, line in _lines(text):
        keyword, _, rest = line.strip().partition(" ")
        col = len(line) - len(line.lstrip()) + len(keyword) + 2
        if keyword == "module":
            name, _ = _header(line, line_no, "module")
        elif keyword == "dims":
            dims = {}
            for token in rest.split():
                v, _, d = token.partition(":")
                if v not in algebra.vertices or not d.isdigit():
                    raise ParseError(f"Expected '<vertex>:<dim>', got '{token}'", line_no, col + rest.find(token))
                dims[v] = int(d)
        elif keyword == "map":
            arrow, eq, body = rest.partition("=")
            arrow = arrow.strip()
            if not eq or arrow not in algebra.quiver.arrows:
                raise ParseError(f"Expected 'map <arrow> = [[...]]' with a known arrow, got '{rest.strip()}'",
                                 line_no, col)
            if dims is None:
                raise ParseError("Map given before the dims line", line_no, 1)
            s, t = algebra.quiver.arrows[arrow]
            m = _matrix(body.strip(), line_no, col + len(rest) - len(body.lstrip()))
            if m.size and m.shape != (dims.get(t, 0), dims.get(s, 0)):
                raise ParseError(f"Arrow {arrow} needs a {dims.get(t, 0)}x{dims.get(s, 0)} matrix, "
                                 f"got {m.shape[0]}x{m.shape[1]}", line_no, col)
            maps[arrow] = m
        else:
            raise ParseError(f"Unknown keyword '{keyword}'", line_no, 1)
    if dims is None:
        raise ParseError("Missing 'dims' line")
    try:
        return Representation(algebra, dims, maps, name=name)
    except ValueError as exc:
        raise ParseError(str(exc))


def _entry(text, w, u, algebra, line_no, column):
    """Element of e_w A e_u written as a sum of paths; 'e' is the idempotent"""
    out = np.zeros(algebra.dim, dtype=np.int64)
    body = text.strip()
    if body == "0":
        return out
    for m in _TERM.finditer(text):
        term = m.group(0)
        if not term.strip():
            continue
        idem = _IDEMPOTENT.match(term)
        if idem and "e" not in algebra.quiver.arrows:
            sign, coef, v = idem.groups()
            if (v or w) != w or w != u:
                raise ParseError(f"Idempotent entry needs equal vertices, got P({u}) -> P({w})",
                                 line_no, column + m.start() + 1)
            c = int(coef or 1) * (-1 if sign == "-" else 1)
            out = (out + c * algebra.idempotent(w)) % algebra.p
            continue
        terms = parse_relation(term, algebra.quiver, algebra.p, line_no, column + m.start())
        for _, q in terms:
            if (q.source, q.target) != (w, u):
                raise ParseError(f"Path {q.label()} does not run from {w} to {u}", line_no, column + m.start() + 1)
        out = (out + algebra.element(terms)) % algebra.p
    return out


def _terms_line(rest, algebra, line_no, column) -> List[str]:
    rest = rest.strip()
    if rest in ("", "0"):
        return []
    vertices = []
    for piece in rest.split("+"):
        m = _PROJECTIVE.fullmatch(piece.strip())
        if not m or m.group(1) not in algebra.vertices:
            raise ParseError(f"Expected a sum of P(<vertex>), got '{piece.strip()}'", line_no,
                             column + rest.find(piece.strip()))
        vertices.append(m.group(1))
    return vertices


def _rows(body, line_no, column) -> List[List[Tuple[str, int]]]:
    """Split '[[x, y], [z, w]]' into entry strings with their columns"""
    inner = body.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ParseError("Differential must be written [[...], ...]", line_no, column)
    # inner[1:] starts one past the outer bracket
    start = column + len(body) - len(body.lstrip()) + 1
    rows = []
    for m in re.finditer(r"\[([^\[\]]*)\]", inner[1:-1]):
        entries, pos = [], m.start(1)
        for cell in m.group(1).split(","):
            entries.append((cell, start + pos))
            pos += len(cell) + 1
        rows.append([] if m.group(1).strip() == "" else entries)
    return rows


def _build_part(algebra, name, deg_m1, deg_0, rows, line_no):
    if rows is None:
        if deg_m1 and deg_0:
            raise ParseError(f"Missing differential of {name or 'complex'}", line_no, 1)
        rows = [[] for _ in deg_0]
    if len(rows) != len(deg_0) or any(len(r) != len(deg_m1) for r in rows):
        raise ParseError(f"Differential of {name or 'complex'} must be {len(deg_0)}x{len(deg_m1)}", line_no, 1)
    entries = np.zeros((len(deg_0), len(deg_m1), algebra.dim), dtype=np.int64)
    for j, w in enumerate(deg_0):
        for i, u in enumerate(deg_m1):
            cell, col = rows[j][i]
            entries[j, i] = _entry(cell, w, u, algebra, line_no, col)
    return TwoTermComplex(algebra, deg_m1, deg_0, entries, name=name)


def parse_complex(text, algebra: BoundQuiverAlgebra) -> TwoTermComplex:
    """Read a complex file; 'summand' blocks become the parts of a direct sum"""
    name = ""
    blocks = []
    current = None
    for line_no, line in _lines(text):
        stripped = line.strip()
        keyword, _, rest = stripped.partition(" ")
        col = len(line) - len(line.lstrip()) + 1
        if keyword == "complex":
            name, _ = _header(line, line_no, "complex")
        elif keyword == "summand":
            current = {"name": rest.strip(), "deg_m1": None, "deg_0": None, "rows": None, "line": line_no}
            blocks.append(current)
        elif stripped.startswith("deg"):
            m = re.match(r"deg\s*(-1|0)\s*:(.*)$", stripped)
            if not m:
                raise ParseError("Expected 'deg -1: ...' or 'deg 0: ...'", line_no, col)
            if current is None:
                current = {"name": "", "deg_m1": None, "deg_0": None, "rows": None, "line": line_no}
                blocks.append(current)
            key = "deg_m1" if m.group(1) == "-1" else "deg_0"
            current[key] = _terms_line(m.group(2), algebra, line_no, col + m.start(2))
        elif re.match(r"d\s*=", stripped):
            if current is None:
                raise ParseError("Differential must follow the degree lines", line_no, col)
            body = stripped.partition("=")[2]
            current["rows"] = _rows(body, line_no, col + len(stripped) - len(body))
            current["line"] = line_no
        else:
            raise ParseError(f"Unknown keyword '{keyword}'", line_no, col)
    if not blocks:
        raise ParseError("No degree lines in complex file")
    parts = []
    for block in blocks:
        deg_m1, deg_0 = block["deg_m1"] or [], block["deg_0"] or []
        try:
            parts.append(_build_part(algebra, block["name"], deg_m1, deg_0, block["rows"], block["line"]))
        except ValueError as exc:
            raise ParseError(str(exc), block["line"], 1)
    if len(parts) == 1 and not parts[0].name:
        parts[0].name = name
        return parts[0]
    return TwoTermComplex.sum_of(parts, name=name)


def _over(text, keyword):
    for line_no, line in _lines(text):
        return _header(line, line_no, keyword)[1]
    raise ParseError(f"Empty {keyword} file")


def load_module(name, fixtures_dir=None, p=None, algebra: Optional[BoundQuiverAlgebra] = None) -> Representation:
    path = find_fixture(name, fixtures_dir)
    text = _read(path)
    algebra = algebra or load_algebra(_over(text, "module"), fixtures_dir, p)
    return parse_module(text, algebra)


def load_complex(name, fixtures_dir=None, p=None, algebra: Optional[BoundQuiverAlgebra] = None) -> TwoTermComplex:
    path = find_fixture(name, fixtures_dir)
    text = _read(path)
    algebra = algebra or load_algebra(_over(text, "complex"), fixtures_dir, p)
    return parse_complex(text, algebra)


def kind_of(name, fixtures_dir=None):
    """'algebra', 'module' or 'complex', from the extension or else the first keyword"""
    path = find_fixture(name, fixtures_dir)
    ext = os.path.splitext(path)[1]
    if ext in EXTENSIONS:
        return {".alg": "algebra", ".mod": "module", ".cx": "complex"}[ext]
    for _, line in _lines(_read(path)):
        first = line.split()[0]
        return {"module": "module", "complex": "complex"}.get(first, "algebra")
    raise WorkbenchError(f"Empty file {path}")

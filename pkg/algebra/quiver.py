"""Quivers, bound quiver algebras and abstract structure-constant algebras.

Paths compose left to right: ``a*b`` means first ``a`` then ``b``, and the
basis path ``a*b`` of e_i A e_j starts at i and ends at j. The ideal is kept
in a linear normal form: paths are ordered longest first, the ideal span is
row reduced, and the non-pivot paths form the basis of the algebra.
"""
import logging
import re
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from algebra import linalg
from algebra.errors import NonAdmissibleError, ParseError

logger = logging.getLogger(__name__)

MAX_PATH_LENGTH = 16
MAX_PATHS = 6000


class Path(NamedTuple):
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e({self.source})"

    def then(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise ValueError(f"Cannot compose {self.label()} with {other.label()}")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


class Quiver:
    """A finite quiver with ordered vertices and named arrows"""

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Tuple[str, str, str]]):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"Duplicate vertex ids in {self.vertices}")
        self.arrows: Dict[str, Tuple[str, str]] = {}
        for name, source, target in arrows:
            if name in self.arrows:
                raise ValueError(f"Duplicate arrow name: {name}")
            for v in (source, target):
                if v not in self.vertices:
                    raise ValueError(f"Arrow {name} uses unknown vertex {v}")
            self.arrows[name] = (str(source), str(target))

    def __repr__(self):
        arrows = ", ".join(f"{a}:{s}->{t}" for a, (s, t) in self.arrows.items())
        return f"Quiver({' '.join(self.vertices)}; {arrows})"

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for name, (s, t) in self.arrows.items():
            g.add_edge(s, t, key=name, name=name)
        return g

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(nx.DiGraph(self.graph()))

    def longest_path_length(self) -> int:
        return nx.dag_longest_path_length(nx.DiGraph(self.graph()))

    def arrows_from(self, v: str) -> List[str]:
        return [a for a, (s, _) in self.arrows.items() if s == v]

    def arrows_to(self, v: str) -> List[str]:
        return [a for a, (_, t) in self.arrows.items() if t == v]

    def arrow_path(self, name: str) -> Path:
        s, t = self.arrows[name]
        return Path(s, t, (name,))

    def paths(self, max_length: int) -> List[Path]:
        """All paths of length at most max_length, by length then discovery order"""
        layer = [Path(v, v) for v in self.vertices]
        out = list(layer)
        for _ in range(max_length):
            nxt = []
            for q in layer:
                for a in self.arrows_from(q.target):
                    nxt.append(Path(q.source, self.arrows[a][1], q.arrows + (a,)))
            if not nxt:
                break
            out.extend(nxt)
            if len(out) > MAX_PATHS:
                raise NonAdmissibleError(f"More than {MAX_PATHS} paths; relations do not bound the algebra")
            layer = nxt
        return out

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a, t, s) for a, (s, t) in self.arrows.items()])


Relation = List[Tuple[int, Path]]


class BoundQuiverAlgebra:
    """kQ/I for an admissible ideal I, with a path basis and structure constants"""

    def __init__(self, quiver: Quiver, relations: Sequence[Relation] = (), p: int = 2, name: str = ""):
        self.quiver = quiver
        self.p = p
        self.name = name
        self.relations: List[Relation] = []
        for rel in relations:
            terms = [(int(c) % p, q) for c, q in rel if int(c) % p]
            if terms:
                self._check_relation(terms)
                self.relations.append(terms)
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._build()
        logger.info(f"Built algebra {self.name or '?'} of dimension {self.dim} over GF({p})")

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or self.quiver!r}, dim={self.dim}, p={self.p})"

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    def _check_relation(self, terms: Relation):
        ends = {(q.source, q.target) for _, q in terms}
        if len(ends) != 1:
            raise NonAdmissibleError(f"Relation terms are not parallel: {[q.label() for _, q in terms]}")
        if min(q.length for _, q in terms) < 2:
            raise NonAdmissibleError(f"Relation {[q.label() for _, q in terms]} has a term of length < 2")

    def _truncation(self) -> int:
        """Least N with every path of length N in the ideal"""
        if self.quiver.is_acyclic():
            return self.quiver.longest_path_length() + 1
        for n in range(2, MAX_PATH_LENGTH + 1):
            paths = self.quiver.paths(n)
            columns = {q: i for i, q in enumerate(paths)}
            top = [columns[q] for q in paths if q.length == n]
            if not top:
                return n
            rows = self._ideal_rows(paths, columns, n + 1)
            if rows.shape[0] and self._contains_all(rows, top):
                return n
        raise NonAdmissibleError(f"No power of the arrow ideal up to {MAX_PATH_LENGTH} lies in the ideal")

    def _contains_all(self, rows: np.ndarray, cols: List[int]) -> bool:
        unit = linalg.zeros(rows.shape[1], len(cols))
        unit[cols, list(range(len(cols)))] = 1
        return linalg.solve(rows.T, unit, self.p) is not None

    def _ideal_rows(self, paths: List[Path], columns: Dict[Path, int], bound: int) -> np.ndarray:
        """Row vectors of u*rho*v truncated to paths of length < bound"""
        rows = []
        ending = {v: [q for q in paths if q.target == v] for v in self.vertices}
        starting = {v: [q for q in paths if q.source == v] for v in self.vertices}
        for rel in self.relations:
            shortest = min(q.length for _, q in rel)
            s, t = rel[0][1].source, rel[0][1].target
            for u in ending[s]:
                for v in starting[t]:
                    if u.length + v.length + shortest >= bound:
                        continue
                    row = linalg.zeros(1, len(paths))[0]
                    for c, q in rel:
                        full = u.then(q).then(v)
                        if full.length < bound:
                            row[columns[full]] = (row[columns[full]] + c) % self.p
                    if row.any():
                        rows.append(row)
        if not rows:
            return linalg.zeros(0, len(paths))
        return np.array(rows, dtype=np.int64)

    def _build(self):
        p = self.p
        self.truncation = self._truncation()
        paths = self.quiver.paths(self.truncation - 1)
        # longest paths first so leading terms of the ideal are the longest
        order = sorted(range(len(paths)), key=lambda i: (-paths[i].length, i))
        self.path_space: List[Path] = [paths[i] for i in order]
        self.path_column = {q: c for c, q in enumerate(self.path_space)}
        rows = self._ideal_rows(self.path_space, self.path_column, self.truncation)
        if rows.shape[0]:
            reduced, pivots = linalg.rref(rows, p)
            self._ideal = reduced[: len(pivots)]
        else:
            pivots = []
            self._ideal = linalg.zeros(0, len(self.path_space))
        self._pivot_row = {c: r for r, c in enumerate(pivots)}
        discovery = {q: i for i, q in enumerate(paths)}
        basis_cols = [c for c in range(len(self.path_space)) if c not in self._pivot_row]
        basis_cols.sort(key=lambda c: (self.path_space[c].length, discovery[self.path_space[c]]))
        self._basis_cols = basis_cols
        self.basis: List[Path] = [self.path_space[c] for c in basis_cols]
        self.index = {q: i for i, q in enumerate(self.basis)}
        self.dim = len(self.basis)

        self.blocks: Dict[Tuple[str, str], List[int]] = {(s, t): [] for s in self.vertices for t in self.vertices}
        for i, q in enumerate(self.basis):
            self.blocks[(q.source, q.target)].append(i)

        n = self.dim
        self.mult = np.zeros((n, n, n), dtype=np.int64)
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                if bi.target == bj.source:
                    self.mult[i, j] = self.path_coords(bi.then(bj))
        self.unit = sum(self.idempotent(v) for v in self.vertices) % p

    def path_coords(self, q: Path) -> np.ndarray:
        """Normal form of a single path in basis coordinates"""
        out = linalg.zeros(1, self.dim)[0]
        if q.length >= self.truncation:
            return out
        if q in self.index:
            out[self.index[q]] = 1
            return out
        row = self._ideal[self._pivot_row[self.path_column[q]]]
        return (-row[self._basis_cols]) % self.p

    def element(self, terms) -> np.ndarray:
        """Coordinates of a linear combination given as (coef, Path) pairs or a single Path"""
        if isinstance(terms, Path):
            return self.path_coords(terms)
        out = linalg.zeros(1, self.dim)[0]
        for c, q in terms:
            out = (out + c * self.path_coords(q)) % self.p
        return out

    def idempotent(self, v: str) -> np.ndarray:
        return self.path_coords(Path(v, v))

    def arrow_element(self, name: str) -> np.ndarray:
        return self.path_coords(self.quiver.arrow_path(name))

    def multiply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.mult) % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Column b holds x * basis[b]"""
        return np.einsum("k,kbc->cb", np.asarray(x), self.mult) % self.p

    def right_matrix(self, x) -> np.ndarray:
        """Column b holds basis[b] * x"""
        return np.einsum("k,bkc->cb", np.asarray(x), self.mult) % self.p

    def block(self, s: str, t: str) -> List[int]:
        """Basis indices of e_s A e_t (paths from s to t)"""
        return self.blocks[(s, t)]

    def radical_basis(self) -> np.ndarray:
        """The arrow ideal, which is the Jacobson radical of kQ/I"""
        cols = [i for i, q in enumerate(self.basis) if q.length > 0]
        return linalg.identity(self.dim)[:, cols]

    def is_semisimple(self) -> bool:
        return not self.quiver.arrows

    def is_hereditary(self) -> bool:
        return self.quiver.is_acyclic() and not self.relations

    def cartan(self) -> np.ndarray:
        """dim e_i A e_j indexed by vertex order"""
        vs = self.vertices
        return np.array([[len(self.block(s, t)) for t in vs] for s in vs], dtype=np.int64)

    def to_abstract(self) -> "AbstractAlgebra":
        return AbstractAlgebra(self.mult, self.unit, self.p, name=self.name)

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            rels = [[(c, q.reversed()) for c, q in rel] for rel in self.relations]
            op = BoundQuiverAlgebra(self.quiver.opposite(), rels, self.p, name=f"{self.name}^op" if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def describe(self) -> str:
        lines = [f"algebra {self.name}" if self.name else "algebra", f"field {self.p}",
                 f"vertices {' '.join(self.vertices)}"]
        lines += [f"arrow {a} : {s} -> {t}" for a, (s, t) in self.quiver.arrows.items()]
        for rel in self.relations:
            lines.append("relation " + format_terms(rel))
        return "\n".join(lines)


def format_terms(terms: Relation) -> str:
    parts = []
    for i, (c, q) in enumerate(terms):
        coef = "" if c == 1 else f"{c} "
        parts.append(("" if i == 0 else "+ ") + coef + q.label())
    return " ".join(parts)


class AbstractAlgebra:
    """A unital associative algebra given by structure constants"""

    def __init__(self, mult: np.ndarray, unit, p: int, name: str = ""):
        self.mult = linalg.mod_p(mult, p)
        self.unit = linalg.mod_p(unit, p).reshape(-1)
        self.p = p
        self.name = name
        self.dim = self.mult.shape[0]

    def __repr__(self):
        return f"AbstractAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"

    def multiply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.mult) % self.p

    def left_matrix(self, x) -> np.ndarray:
        return np.einsum("k,kbc->cb", np.asarray(x), self.mult) % self.p

    def right_matrix(self, x) -> np.ndarray:
        return np.einsum("k,bkc->cb", np.asarray(x), self.mult) % self.p

    def products(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Columns u_a * v_b for all pairs, shape (dim, cols(u) * cols(v))"""
        t = np.einsum("ia,jb,ijk->kab", u, v, self.mult) % self.p
        return t.reshape(self.dim, -1)

    def power(self, x, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def is_associative(self) -> bool:
        lhs = np.einsum("ijm,mkl->ijkl", self.mult, self.mult) % self.p
        rhs = np.einsum("jkm,iml->ijkl", self.mult, self.mult) % self.p
        return bool(np.array_equal(lhs, rhs))

    def is_unit(self) -> bool:
        e = np.eye(self.dim, dtype=np.int64)
        return bool(np.array_equal(self.left_matrix(self.unit), e) and np.array_equal(self.right_matrix(self.unit), e))


def multiply(x, y, algebra) -> np.ndarray:
    return algebra.multiply(x, y)


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(rf"\s*([+-])?\s*(\d+)?\s*\*?\s*({_NAME}(?:\s*\*\s*{_NAME})*)\s*")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def parse_relation(body: str, quiver: Quiver, p: int, line_no: int, offset: int) -> Relation:
    terms: Relation = []
    pos = 0
    while pos < len(body):
        if not body[pos:].strip():
            break
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"Cannot read relation term '{body[pos:].strip()}'", line_no, offset + pos + 1)
        sign, coef, word = m.groups()
        if terms and not sign:
            raise ParseError("Expected '+' or '-' between relation terms", line_no, offset + m.start(3) + 1)
        names = [w.strip() for w in word.split("*")]
        arrows = []
        for a in names:
            if a not in quiver.arrows:
                raise ParseError(f"Unknown arrow '{a}'", line_no, offset + body.find(a, pos) + 1)
            arrows.append(a)
        for a, b in zip(arrows, arrows[1:]):
            if quiver.arrows[a][1] != quiver.arrows[b][0]:
                raise ParseError(f"Arrows {a} and {b} do not compose", line_no, offset + m.start(3) + 1)
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        terms.append((c % p, Path(quiver.arrows[arrows[0]][0], quiver.arrows[arrows[-1]][1], tuple(arrows))))
        pos = m.end()
    if not terms:
        raise ParseError("Empty relation", line_no, offset + 1)
    return terms


def parse_algebra(text: str, p: Optional[int] = None, name: str = "") -> BoundQuiverAlgebra:
    """Parse the line-oriented quiver description language"""
    field = None
    vertices: Optional[List[str]] = None
    arrows: List[Tuple[str, str, str]] = []
    pending: List[Tuple[int, int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        keyword, _, rest = line.strip().partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "name" or keyword == "algebra":
            name = name or rest.strip()
        elif keyword == "field":
            try:
                field = int(rest.strip())
            except ValueError:
                raise ParseError(f"Field must be a prime, got '{rest.strip()}'", line_no, rest_col)
            if not _is_prime(field):
                raise ParseError(f"Field must be a prime, got {field}", line_no, rest_col)
        elif keyword == "vertices":
            vertices = rest.split()
            if not vertices or len(set(vertices)) != len(vertices):
                raise ParseError("Vertex ids must be present and unique", line_no, rest_col)
        elif keyword == "arrow":
            m = re.fullmatch(rf"\s*({_NAME})\s*:\s*(\S+)\s*->\s*(\S+)\s*", rest)
            if not m:
                raise ParseError("Expected 'arrow <name> : <src> -> <tgt>'", line_no, rest_col)
            if vertices is None:
                raise ParseError("Arrow declared before vertices", line_no, indent + 1)
            a, s, t = m.groups()
            for v, g in ((s, 2), (t, 3)):
                if v not in vertices:
                    raise ParseError(f"Unknown vertex '{v}'", line_no, rest_col + m.start(g))
            if any(a == b for b, _, _ in arrows):
                raise ParseError(f"Duplicate arrow '{a}'", line_no, rest_col + m.start(1))
            arrows.append((a, s, t))
        elif keyword == "relation":
            pending.append((line_no, rest_col - 1, rest))
        else:
            raise ParseError(f"Unknown keyword '{keyword}'", line_no, indent + 1)
    if vertices is None:
        raise ParseError("Missing 'vertices' line")
    quiver = Quiver(vertices, arrows)
    p = p or field or 2
    relations = [parse_relation(body, quiver, p, ln, off) for ln, off, body in pending]
    return BoundQuiverAlgebra(quiver, relations, p, name=name)

"""Right modules over bound quiver algebras, as quiver representations.

A representation stores one vector space per vertex and one matrix per arrow,
of shape (dim target, dim source). A path a1*a2 acts as M(a2) @ M(a1). Maps
between representations are stored as one block-diagonal matrix on the total
spaces, so composition is a plain matrix product.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra import linalg
from algebra.errors import HypothesisError, InternalCheckError, IsomorphismIndeterminate
from algebra.quiver import AbstractAlgebra, BoundQuiverAlgebra, Path
from algebra.structure import jacobson_radical, split_idempotent

logger = logging.getLogger(__name__)

ISO_SAMPLES = 64
SPLIT_SAMPLES = 16
MAX_TOP_ELEMENTS = 4096


class Representation:
    """A finite-dimensional right module given by vertex dimensions and arrow matrices"""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Dict[str, int], maps: Optional[Dict[str, object]] = None,
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.p = algebra.p
        unknown = set(map(str, dims)) - set(algebra.vertices)
        if unknown:
            raise ValueError(f"Unknown vertices {sorted(unknown)}")
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ValueError(f"Negative dimension in {self.dims}")
        maps = dict(maps or {})
        unknown = set(maps) - set(algebra.quiver.arrows)
        if unknown:
            raise ValueError(f"Unknown arrows {sorted(unknown)}")
        self.maps: Dict[str, np.ndarray] = {}
        for a, (s, t) in algebra.quiver.arrows.items():
            shape = (self.dims[t], self.dims[s])
            m = maps.get(a)
            if m is None:
                self.maps[a] = linalg.zeros(*shape)
                continue
            m = linalg.mod_p(m, self.p)
            if m.size != shape[0] * shape[1]:
                raise ValueError(f"Arrow {a} needs a {shape[0]}x{shape[1]} matrix, got shape {m.shape}")
            self.maps[a] = m.reshape(shape)
        self.name = name
        self.offsets: Dict[str, int] = {}
        start = 0
        for v in algebra.vertices:
            self.offsets[v] = start
            start += self.dims[v]
        self.dim = start
        self._path_cache: Dict[tuple, np.ndarray] = {}
        self.parts: Optional[List["Representation"]] = None
        self.part_offsets: Optional[List[Dict[str, int]]] = None
        if check:
            self._check_relations()

    def __repr__(self):
        return f"Representation({self.label()}, dims={self.dim_vector})"

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    def label(self) -> str:
        return self.name or stack_name(self)

    def slice(self, v: str) -> slice:
        return slice(self.offsets[v], self.offsets[v] + self.dims[v])

    def path_matrix(self, q: Path) -> np.ndarray:
        key = (q.source, q.target, q.arrows)
        if key in self._path_cache:
            return self._path_cache[key]
        out = linalg.identity(self.dims[q.source])
        for a in q.arrows:
            out = linalg.mat_mul(self.maps[a], out, self.p)
        self._path_cache[key] = out
        return out

    def _check_relations(self):
        for rel in self.algebra.relations:
            s, t = rel[0][1].source, rel[0][1].target
            total = linalg.zeros(self.dims[t], self.dims[s])
            for c, q in rel:
                total = (total + c * self.path_matrix(q)) % self.p
            if total.any():
                raise ValueError(f"Relation {[q.label() for _, q in rel]} does not hold in {self.name or 'module'}")
        if not self.algebra.quiver.is_acyclic():
            n = self.algebra.truncation
            for q in self.algebra.quiver.paths(n):
                if q.length == n and self.path_matrix(q).any():
                    raise ValueError(f"Path {q.label()} must act as zero")

    def action_matrix(self, x) -> np.ndarray:
        """Total matrix of v -> v.x for an algebra element x"""
        x = linalg.mod_p(x, self.p).reshape(-1)
        out = linalg.zeros(self.dim, self.dim)
        for b in np.flatnonzero(x):
            q = self.algebra.basis[b]
            if self.dims[q.source] and self.dims[q.target]:
                out[self.slice(q.target), self.slice(q.source)] += x[b] * self.path_matrix(q)
        return out % self.p

    def to_dict(self) -> dict:
        return {"name": self.label(), "dims": {v: d for v, d in self.dims.items()},
                "maps": {a: m.tolist() for a, m in self.maps.items()}}


class ModuleMap:
    """A morphism of representations stored as a block-diagonal total matrix"""

    def __init__(self, source: Representation, target: Representation, matrix):
        self.source = source
        self.target = target
        self.matrix = linalg.mod_p(matrix, source.p).reshape(target.dim, source.dim)

    def __repr__(self):
        return f"ModuleMap({self.source.label()} -> {self.target.label()}, rank={self.rank()})"

    def at(self, v: str) -> np.ndarray:
        return self.matrix[self.target.slice(v), self.source.slice(v)]

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other"""
        return ModuleMap(other.source, self.target, linalg.mat_mul(self.matrix, other.matrix, self.source.p))

    def add(self, other: "ModuleMap", coef: int = 1) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + coef * other.matrix)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, c * self.matrix)

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.source.p) if self.matrix.size else 0

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_homomorphism(self) -> bool:
        for a, (s, t) in self.source.algebra.quiver.arrows.items():
            lhs = linalg.mat_mul(self.target.maps[a], self.at(s), self.source.p)
            rhs = linalg.mat_mul(self.at(t), self.source.maps[a], self.source.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    @classmethod
    def identity(cls, x: Representation) -> "ModuleMap":
        return cls(x, x, linalg.identity(x.dim))

    @classmethod
    def zero(cls, x: Representation, y: Representation) -> "ModuleMap":
        return cls(x, y, linalg.zeros(y.dim, x.dim))


class HomSpace:
    """Hom(source, target) as the solution space of the intertwiner equations"""

    def __init__(self, source: Representation, target: Representation):
        if source.algebra is not target.algebra:
            raise ValueError("Modules live over different algebras")
        self.source = source
        self.target = target
        p = source.p
        vs = source.algebra.vertices
        self._offset: Dict[str, int] = {}
        n = 0
        for v in vs:
            self._offset[v] = n
            n += target.dims[v] * source.dims[v]
        self.unknowns = n
        rows = []
        for a, (s, t) in source.algebra.quiver.arrows.items():
            xs, xt, ys, yt = source.dims[s], source.dims[t], target.dims[s], target.dims[t]
            if yt * xs == 0:
                continue
            eq = linalg.zeros(yt * xs, n)
            if ys * xs:
                eq[:, self._offset[s]: self._offset[s] + ys * xs] += np.kron(target.maps[a], linalg.identity(xs))
            if yt * xt:
                eq[:, self._offset[t]: self._offset[t] + yt * xt] -= np.kron(linalg.identity(yt), source.maps[a].T)
            rows.append(eq % p)
        system = np.concatenate(rows, axis=0) if rows else linalg.zeros(0, n)
        self.basis_vectors, self.free = linalg.nullspace(system, p)
        self.dim = len(self.free)
        self.maps: List[ModuleMap] = [self._from_vector(self.basis_vectors[:, k]) for k in range(self.dim)]

    def __repr__(self):
        return f"HomSpace({self.source.label()}, {self.target.label()}, dim={self.dim})"

    def _from_vector(self, u) -> ModuleMap:
        out = linalg.zeros(self.target.dim, self.source.dim)
        for v in self.source.algebra.vertices:
            ys, xs = self.target.dims[v], self.source.dims[v]
            if ys * xs:
                block = u[self._offset[v]: self._offset[v] + ys * xs].reshape(ys, xs)
                out[self.target.slice(v), self.source.slice(v)] = block
        return ModuleMap(self.source, self.target, out)

    def vector(self, f: ModuleMap) -> np.ndarray:
        u = np.zeros(self.unknowns, dtype=np.int64)
        for v in self.source.algebra.vertices:
            ys, xs = self.target.dims[v], self.source.dims[v]
            if ys * xs:
                u[self._offset[v]: self._offset[v] + ys * xs] = f.at(v).reshape(-1)
        return u

    def coordinates(self, f: ModuleMap) -> np.ndarray:
        """Coordinates of f in the basis self.maps"""
        return self.vector(f)[self.free]

    def element(self, coeffs) -> ModuleMap:
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        return self._from_vector(linalg.mat_mul(self.basis_vectors, coeffs, self.source.p))

    def matrices(self) -> List[np.ndarray]:
        return [f.matrix for f in self.maps]


def hom_basis(x: Representation, y: Representation) -> List[ModuleMap]:
    return HomSpace(x, y).maps


def hom_dim(x: Representation, y: Representation) -> int:
    return HomSpace(x, y).dim


def _vertex_bases(x: Representation, bases: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    out = {}
    for v in x.algebra.vertices:
        b = bases.get(v)
        if b is None:
            out[v] = linalg.zeros(x.dims[v], 0)
            continue
        b = linalg.mod_p(b, x.p)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if b.shape[0] != x.dims[v]:
            raise ValueError(f"Basis at vertex {v} has {b.shape[0]} rows, expected {x.dims[v]}")
        out[v] = b
    return out


def submodule(x: Representation, bases: Dict[str, np.ndarray], name: str = "") -> Tuple[Representation, ModuleMap]:
    """Submodule spanned per vertex by independent columns, with its inclusion"""
    p = x.p
    bases = _vertex_bases(x, bases)
    maps = {}
    for a, (s, t) in x.algebra.quiver.arrows.items():
        image = linalg.mat_mul(x.maps[a], bases[s], p)
        sol = linalg.solve(bases[t], image, p)
        if sol is None:
            raise ValueError(f"Subspace is not closed under arrow {a}")
        maps[a] = sol
    sub = Representation(x.algebra, {v: b.shape[1] for v, b in bases.items()}, maps, name=name, check=False)
    incl = linalg.zeros(x.dim, sub.dim)
    for v, b in bases.items():
        incl[x.slice(v), sub.slice(v)] = b
    return sub, ModuleMap(sub, x, incl)


def quotient(x: Representation, bases: Dict[str, np.ndarray], name: str = "") -> Tuple[Representation, ModuleMap]:
    """x modulo a submodule, with the canonical projection"""
    p = x.p
    bases = _vertex_bases(x, bases)
    comps, projs = {}, {}
    for v in x.algebra.vertices:
        sub = linalg.column_space(bases[v], p) if bases[v].size else bases[v]
        comps[v] = linalg.complement_columns(sub, x.dims[v], p)
        full = np.concatenate([comps[v], sub], axis=1)
        projs[v] = linalg.inverse(full, p)[: comps[v].shape[1]]
    maps = {a: linalg.mat_mul(projs[t], linalg.mat_mul(x.maps[a], comps[s], p), p)
            for a, (s, t) in x.algebra.quiver.arrows.items()}
    q = Representation(x.algebra, {v: c.shape[1] for v, c in comps.items()}, maps, name=name, check=False)
    proj = linalg.zeros(q.dim, x.dim)
    for v in x.algebra.vertices:
        proj[q.slice(v), x.slice(v)] = projs[v]
    return q, ModuleMap(x, q, proj)


def kernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return submodule(f.source, {v: linalg.kernel_basis(f.at(v), f.source.p) if f.source.dims[v] else None
                                for v in f.source.algebra.vertices})


def image(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return submodule(f.target, {v: linalg.column_space(f.at(v), f.source.p) for v in f.source.algebra.vertices})


def cokernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return quotient(f.target, {v: linalg.column_space(f.at(v), f.source.p) for v in f.source.algebra.vertices})


def direct_sum(mods: Sequence[Representation], name: str = "") -> Tuple[Representation, List[ModuleMap], List[ModuleMap]]:
    """Direct sum with its inclusions and projections; parts stay attached to the sum"""
    if not mods:
        raise ValueError("Direct sum of an empty list needs an algebra; use zero_module")
    alg = mods[0].algebra
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.vertices}
    maps = {a: linalg.block_diag([m.maps[a] for m in mods]) for a in alg.quiver.arrows}
    total = Representation(alg, dims, maps, name=name, check=False)
    part_offsets = []
    incls, projs = [], []
    running = {v: 0 for v in alg.vertices}
    for m in mods:
        offs = {v: total.offsets[v] + running[v] for v in alg.vertices}
        part_offsets.append(offs)
        incl = linalg.zeros(total.dim, m.dim)
        for v in alg.vertices:
            incl[offs[v]: offs[v] + m.dims[v], m.slice(v)] = linalg.identity(m.dims[v])
            running[v] += m.dims[v]
        incls.append(ModuleMap(m, total, incl))
        projs.append(ModuleMap(total, m, incl.T))
    total.parts = list(mods)
    total.part_offsets = part_offsets
    return total, incls, projs


def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, {}, name="0")


def sum_of(mods: Sequence[Representation], alg: Optional[BoundQuiverAlgebra] = None) -> Representation:
    if not mods:
        return zero_module(alg)
    return direct_sum(mods)[0]


def radical(x: Representation) -> Tuple[Representation, ModuleMap]:
    p = x.p
    bases = {}
    for v in x.algebra.vertices:
        incoming = [x.maps[a] for a in x.algebra.quiver.arrows_to(v)]
        stacked = np.concatenate(incoming, axis=1) if incoming else linalg.zeros(x.dims[v], 0)
        bases[v] = linalg.column_space(stacked, p)
    return submodule(x, bases)


def top(x: Representation) -> Tuple[Representation, ModuleMap]:
    rad, incl = radical(x)
    return quotient(x, {v: incl.at(v) for v in x.algebra.vertices})


def socle(x: Representation) -> Tuple[Representation, ModuleMap]:
    p = x.p
    bases = {}
    for v in x.algebra.vertices:
        outgoing = [x.maps[a] for a in x.algebra.quiver.arrows_from(v)]
        if outgoing and x.dims[v]:
            bases[v] = linalg.kernel_basis(np.concatenate(outgoing, axis=0), p)
        else:
            bases[v] = linalg.identity(x.dims[v])
    return submodule(x, bases)


def _check_vertex(alg: BoundQuiverAlgebra, i: str):
    if str(i) not in alg.vertices:
        raise ValueError(f"Unknown vertex {i}; algebra has {list(alg.vertices)}")


@lru_cache(maxsize=None)
def projective(alg: BoundQuiverAlgebra, i: str) -> Representation:
    """P(i) = e_i A; the basis at v is the basis paths from i to v"""
    i = str(i)
    _check_vertex(alg, i)
    dims = {v: len(alg.block(i, v)) for v in alg.vertices}
    maps = {}
    for a, (v, w) in alg.quiver.arrows.items():
        right = alg.right_matrix(alg.arrow_element(a))
        maps[a] = right[np.ix_(alg.block(i, w), alg.block(i, v))]
    return Representation(alg, dims, maps, name=f"P({i})", check=False)


@lru_cache(maxsize=None)
def injective(alg: BoundQuiverAlgebra, i: str) -> Representation:
    """I(i) = D(A e_i); the space at v is dual to the basis paths from v to i"""
    i = str(i)
    _check_vertex(alg, i)
    dims = {v: len(alg.block(v, i)) for v in alg.vertices}
    maps = {}
    for a, (v, w) in alg.quiver.arrows.items():
        left = alg.left_matrix(alg.arrow_element(a))
        maps[a] = left[np.ix_(alg.block(v, i), alg.block(w, i))].T
    return Representation(alg, dims, maps, name=f"I({i})", check=False)


@lru_cache(maxsize=None)
def simple(alg: BoundQuiverAlgebra, i: str) -> Representation:
    i = str(i)
    _check_vertex(alg, i)
    return Representation(alg, {i: 1}, name=f"S({i})", check=False)


def projective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[str]) -> Representation:
    """P(v1) + P(v2) + ... with the summands recorded in order"""
    if not vertices:
        rep = zero_module(alg)
        rep.parts, rep.part_offsets = [], []
        return rep
    return direct_sum([projective(alg, v) for v in vertices], name="+".join(f"P({v})" for v in vertices))[0]


def injective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[str]) -> Representation:
    if not vertices:
        rep = zero_module(alg)
        rep.parts, rep.part_offsets = [], []
        return rep
    return direct_sum([injective(alg, v) for v in vertices], name="+".join(f"I({v})" for v in vertices))[0]


def regular_module(alg: BoundQuiverAlgebra) -> Representation:
    rep = projective_sum(alg, list(alg.vertices))
    rep.name = "A"
    return rep


def dual_module(alg: BoundQuiverAlgebra) -> Representation:
    rep = injective_sum(alg, list(alg.vertices))
    rep.name = "DA"
    return rep


def projective_map(alg: BoundQuiverAlgebra, src: Sequence[str], tgt: Sequence[str], entries,
                   source: Optional[Representation] = None, target: Optional[Representation] = None) -> ModuleMap:
    """Map between sums of indecomposable projectives from its block matrix.

    entries[j, i] is an element of e_{tgt[j]} A e_{src[i]}; it acts on P(src[i])
    by left multiplication.
    """
    source = projective_sum(alg, src) if source is None else source
    target = projective_sum(alg, tgt) if target is None else target
    entries = np.asarray(entries, dtype=np.int64).reshape(len(tgt), len(src), alg.dim)
    out = linalg.zeros(target.dim, source.dim)
    for j, w in enumerate(tgt):
        for i, u in enumerate(src):
            x = entries[j, i]
            if not x.any():
                continue
            left = alg.left_matrix(x)
            for v in alg.vertices:
                rows, cols = alg.block(w, v), alg.block(u, v)
                if rows and cols:
                    r0, c0 = target.part_offsets[j][v], source.part_offsets[i][v]
                    out[r0: r0 + len(rows), c0: c0 + len(cols)] += left[np.ix_(rows, cols)]
    return ModuleMap(source, target, out)


def map_entries(f: ModuleMap, src: Sequence[str], tgt: Sequence[str]) -> np.ndarray:
    """Block matrix of a map between projective sums built by projective_sum"""
    alg = f.source.algebra
    out = np.zeros((len(tgt), len(src), alg.dim), dtype=np.int64)
    for i, u in enumerate(src):
        unit_pos = alg.block(u, u).index(alg.index[Path(u, u)])
        col = f.matrix[:, f.source.part_offsets[i][u] + unit_pos]
        for j, w in enumerate(tgt):
            idx = alg.block(w, u)
            r0 = f.target.part_offsets[j][u]
            out[j, i, idx] = col[r0: r0 + len(idx)]
    return out


def nakayama_map(alg: BoundQuiverAlgebra, src: Sequence[str], tgt: Sequence[str], entries,
                 source: Optional[Representation] = None, target: Optional[Representation] = None) -> ModuleMap:
    """nu applied to the projective map with the given block matrix"""
    source = injective_sum(alg, src) if source is None else source
    target = injective_sum(alg, tgt) if target is None else target
    entries = np.asarray(entries, dtype=np.int64).reshape(len(tgt), len(src), alg.dim)
    out = linalg.zeros(target.dim, source.dim)
    for j, w in enumerate(tgt):
        for i, u in enumerate(src):
            x = entries[j, i]
            if not x.any():
                continue
            right = alg.right_matrix(x)
            for v in alg.vertices:
                rows, cols = alg.block(v, w), alg.block(v, u)
                if rows and cols:
                    r0, c0 = target.part_offsets[j][v], source.part_offsets[i][v]
                    out[r0: r0 + len(rows), c0: c0 + len(cols)] += right[np.ix_(cols, rows)].T
    return ModuleMap(source, target, out)


def projective_cover(x: Representation) -> Tuple[List[str], Representation, ModuleMap]:
    """Minimal projective cover, generated by a complement of the radical"""
    alg = x.algebra
    p = x.p
    _, rad_incl = radical(x)
    gens: List[Tuple[str, np.ndarray]] = []
    for v in alg.vertices:
        comp = linalg.complement_columns(linalg.column_space(rad_incl.at(v), p) if x.dims[v] else rad_incl.at(v),
                                         x.dims[v], p)
        gens += [(v, comp[:, k]) for k in range(comp.shape[1])]
    verts = [v for v, _ in gens]
    cover = projective_sum(alg, verts)
    out = linalg.zeros(x.dim, cover.dim)
    for k, (v, g) in enumerate(gens):
        for w in alg.vertices:
            idx = alg.block(v, w)
            if not idx or not x.dims[w]:
                continue
            cols = [linalg.mat_mul(x.path_matrix(alg.basis[b]), g, p) for b in idx]
            c0 = cover.part_offsets[k][w]
            out[x.slice(w), c0: c0 + len(idx)] = np.column_stack(cols)
    return verts, cover, ModuleMap(cover, x, out)


@dataclass
class Presentation:
    """Minimal projective presentation P1 -> P0 -> X -> 0"""
    module: Representation
    vertices1: List[str]
    vertices0: List[str]
    d: ModuleMap
    cover: ModuleMap
    syzygy: Representation
    syzygy_inclusion: ModuleMap

    def entries(self) -> np.ndarray:
        return map_entries(self.d, self.vertices1, self.vertices0)


def minimal_presentation(x: Representation) -> Presentation:
    v0, p0, pi = projective_cover(x)
    k, incl = kernel(pi)
    v1, p1, pi1 = projective_cover(k)
    return Presentation(x, v1, v0, incl.compose(pi1), pi, k, incl)


def syzygy(x: Representation) -> Representation:
    return kernel(projective_cover(x)[2])[0]


def is_projective(x: Representation) -> bool:
    return projective_cover(x)[1].dim == x.dim


def is_injective(x: Representation) -> bool:
    return is_projective(dual(x))


def dual(x: Representation) -> Representation:
    """D(X) over the opposite algebra"""
    op = x.algebra.opposite()
    rep = Representation(op, dict(x.dims), {a: m.T for a, m in x.maps.items()}, check=False)
    rep.name = f"D({x.name})" if x.name else ""
    return rep


def nakayama(x: Representation) -> Representation:
    """nu of a projective module, via its decomposition into P(i)'s"""
    verts, cover, _ = projective_cover(x)
    if cover.dim != x.dim:
        raise HypothesisError(f"Nakayama functor needs a projective module, got {x.label()}")
    return injective_sum(x.algebra, verts)


def tau(x: Representation) -> Representation:
    """Auslander-Reiten translate D Tr X = ker(nu P1 -> nu P0)"""
    pres = minimal_presentation(x)
    nu_d = nakayama_map(x.algebra, pres.vertices1, pres.vertices0, pres.entries())
    out = kernel(nu_d)[0]
    out.name = ""
    return out


def tau_inv(x: Representation) -> Representation:
    out = dual(tau(dual(x)))
    out.name = ""
    return out


def _matrix_power(m: np.ndarray, k: int, p: int) -> np.ndarray:
    result = linalg.identity(m.shape[0])
    base = m % p
    while k:
        if k & 1:
            result = linalg.mat_mul(result, base, p)
        k >>= 1
        if k:
            base = linalg.mat_mul(base, base, p)
    return result


def _scalar_part(m: np.ndarray, p: int) -> Optional[int]:
    """lambda with m - lambda nilpotent, if any"""
    n = m.shape[0]
    for lam in range(p):
        if not _matrix_power((m - lam * linalg.identity(n)) % p, n, p).any():
            return lam
    return None


def local_radical(mats: Sequence[np.ndarray], p: int) -> Optional[List[np.ndarray]]:
    """Radical of the matrix algebra spanned by mats if that algebra is local, else None.

    The algebra is local iff every basis element is scalar plus nilpotent and
    the shifted elements span a nilpotent subalgebra of codimension one.
    """
    if not mats:
        return None
    n = mats[0].shape[0]
    shifted = []
    for m in mats:
        lam = _scalar_part(m, p)
        if lam is None:
            return None
        shifted.append((m - lam * linalg.identity(n)) % p)
    flat = np.column_stack([s.reshape(-1) for s in shifted])
    rad = linalg.column_space(flat, p)
    if rad.shape[1] != len(mats) - 1:
        return None
    layer = rad
    for _ in range(n + 1):
        if layer.shape[1] == 0:
            return [rad[:, k].reshape(n, n) for k in range(rad.shape[1])]
        prods = [linalg.mat_mul(layer[:, i].reshape(n, n), rad[:, j].reshape(n, n), p).reshape(-1)
                 for i in range(layer.shape[1]) for j in range(rad.shape[1])]
        layer = linalg.column_space(np.column_stack(prods), p)
    return None


def _end_algebra(x: Representation, end: "HomSpace") -> AbstractAlgebra:
    unit = end.coordinates(ModuleMap.identity(x))
    return matrix_algebra(end.matrices(), lambda m: end.coordinates(ModuleMap(x, x, m)), x.p, unit)


def _top_is_field(x: Representation, end: "HomSpace", radical: np.ndarray, rng: np.random.Generator) -> bool:
    """Every endomorphism outside the radical is invertible, so End(x)/rad is a finite field"""
    p = x.p
    top = linalg.complement_columns(radical, end.dim, p)
    d = top.shape[1]
    if p ** d <= MAX_TOP_ELEMENTS:
        coefs = itertools.product(range(p), repeat=d)
    else:
        coefs = (rng.integers(0, p, size=d) for _ in range(ISO_SAMPLES))
    for c in coefs:
        c = np.asarray(c, dtype=np.int64)
        if not c.any():
            continue
        if not linalg.is_invertible(end.element(linalg.mat_mul(top, c, p)).matrix, p):
            return False
    return True


def is_indecomposable(x: Representation) -> bool:
    """End(x) is local.

    End(x)/rad may be a proper extension field of GF(p), as for regular
    modules of tame algebras at points of higher degree, so a split local
    ring is tried first and a field top second.
    """
    if x.is_zero():
        raise ValueError("The zero module is neither decomposable nor indecomposable")
    end = HomSpace(x, x)
    if end.dim == 1 or local_radical(end.matrices(), x.p) is not None:
        return True
    if _fitting_split(x, end.matrices()) is not None:
        return False
    alg = _end_algebra(x, end)
    return _top_is_field(x, end, jacobson_radical(alg), np.random.default_rng(0))


def matrix_algebra(mats: Sequence[np.ndarray], coordinates: Callable[[np.ndarray], np.ndarray], p: int,
                   unit, name: str = "") -> AbstractAlgebra:
    """Abstract algebra on a basis of maps with product b.b' = b after b'"""
    k = len(mats)
    mult = np.zeros((k, k, k), dtype=np.int64)
    for i, bi in enumerate(mats):
        for j, bj in enumerate(mats):
            if bi.shape[1] == bj.shape[0]:
                mult[i, j] = coordinates(linalg.mat_mul(bi, bj, p))
    return AbstractAlgebra(mult, unit, p, name=name)


def _fitting_split(x: Representation, mats: Sequence[np.ndarray]) -> Optional[Tuple[Dict, Dict]]:
    p = x.p
    for m in mats:
        g = _matrix_power(m, x.dim, p)
        r = linalg.rank(g, p)
        if 0 < r < x.dim:
            f = ModuleMap(x, x, g)
            ker = {v: linalg.kernel_basis(f.at(v), p) if x.dims[v] else None for v in x.algebra.vertices}
            im = {v: linalg.column_space(f.at(v), p) for v in x.algebra.vertices}
            return im, ker
    return None


def _split(x: Representation, rng: np.random.Generator) -> Optional[Tuple[Dict, Dict]]:
    """Two complementary submodules of x, or None when x is indecomposable"""
    end = HomSpace(x, x)
    if end.dim <= 1:
        return None
    mats = end.matrices()
    stacked = np.stack(mats)
    samples = [linalg.mod_p(np.tensordot(rng.integers(0, x.p, size=end.dim), stacked, axes=1), x.p)
               for _ in range(SPLIT_SAMPLES)]
    found = _fitting_split(x, mats + samples)
    if found is not None:
        return found
    if local_radical(mats, x.p) is not None:
        return None
    p = x.p
    alg = _end_algebra(x, end)
    radical = jacobson_radical(alg)
    if _top_is_field(x, end, radical, rng):
        return None
    e = split_idempotent(alg, alg.unit, radical, rng)
    if e is None:
        raise InternalCheckError(f"Non-local endomorphism ring of {x.label()} without a split idempotent")
    f = end.element(e)
    ker = {v: linalg.kernel_basis(f.at(v), p) if x.dims[v] else None for v in x.algebra.vertices}
    im = {v: linalg.column_space(f.at(v), p) for v in x.algebra.vertices}
    return im, ker


@dataclass
class Summand:
    module: Representation
    inclusion: ModuleMap
    projection: ModuleMap


def split_summands(x: Representation, seed: int = 0) -> List[Summand]:
    """Indecomposable summands with inclusions and projections, sorted by dimension vector"""
    if x.is_zero():
        return []
    rng = np.random.default_rng(seed)
    done: List[Tuple[Representation, np.ndarray]] = []
    stack: List[Tuple[Representation, np.ndarray]] = [(x, linalg.identity(x.dim))]
    while stack:
        m, incl = stack.pop(0)
        parts = _split(m, rng)
        if parts is None:
            done.append((m, incl))
            continue
        for bases in parts:
            sub, sub_incl = submodule(m, bases)
            stack.append((sub, linalg.mat_mul(incl, sub_incl.matrix, x.p)))
    done.sort(key=lambda t: (t[0].dim, t[0].dim_vector))
    full = np.concatenate([incl for _, incl in done], axis=1)
    inv = linalg.inverse(full, x.p)
    out = []
    row = 0
    for m, incl in done:
        if m is x:
            m = renamed(x, stack_name(x))
        else:
            m.name = stack_name(m)
        proj = inv[row: row + m.dim]
        row += m.dim
        out.append(Summand(m, ModuleMap(m, x, incl), ModuleMap(x, m, proj)))
    return out


def decompose(x: Representation, seed: int = 0) -> List[Representation]:
    return [s.module for s in split_summands(x, seed)]


def _indecomposables_isomorphic(x: Representation, y: Representation) -> bool:
    """For indecomposable x, y: iso iff some g_j after f_i is invertible"""
    if x.dim_vector != y.dim_vector:
        return False
    fs = hom_basis(x, y)
    gs = hom_basis(y, x)
    for f in fs:
        if not f.is_injective():
            continue
        for g in gs:
            if g.compose(f).is_isomorphism():
                return True
    return False


def is_isomorphic(x: Representation, y: Representation, seed: int = 0, indecomposable: bool = False) -> bool:
    """Exact isomorphism test: invariants, random invertible maps, then Krull-Schmidt matching"""
    if x.algebra is not y.algebra:
        raise ValueError("Modules live over different algebras")
    if x.dim_vector != y.dim_vector:
        return False
    if x.dim == 0:
        return True
    if indecomposable:
        return _indecomposables_isomorphic(x, y)
    hom_xy = HomSpace(x, y)
    if hom_xy.dim == 0 or hom_xy.dim != hom_dim(y, x) or hom_dim(x, x) != hom_dim(y, y) \
            or hom_dim(x, x) != hom_xy.dim:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(ISO_SAMPLES):
        if hom_xy.element(rng.integers(0, x.p, size=hom_xy.dim)).is_isomorphism():
            return True
    try:
        xs, ys = decompose(x, seed), decompose(y, seed)
    except InternalCheckError as exc:
        raise IsomorphismIndeterminate(f"Cannot decide {x.label()} vs {y.label()}: {exc}")
    if len(xs) != len(ys):
        return False
    unmatched = list(ys)
    for part in xs:
        hit = next((k for k, other in enumerate(unmatched) if _indecomposables_isomorphic(part, other)), None)
        if hit is None:
            return False
        unmatched.pop(hit)
    return True


def find_isomorphic(x: Representation, mods: Sequence[Representation]) -> Optional[int]:
    """Index of the indecomposable in mods isomorphic to the indecomposable x"""
    for k, m in enumerate(mods):
        if m.dim_vector == x.dim_vector and _indecomposables_isomorphic(x, m):
            return k
    return None


def conjugate(x: Representation, rng: np.random.Generator) -> Tuple[Representation, ModuleMap]:
    """A random base change of x and the isomorphism x -> result"""
    p = x.p
    gs = {}
    for v in x.algebra.vertices:
        while True:
            g = linalg.random_matrix(rng, x.dims[v], x.dims[v], p)
            if linalg.is_invertible(g, p):
                break
        gs[v] = g
    maps = {a: linalg.mat_mul(gs[t], linalg.mat_mul(x.maps[a], linalg.inverse(gs[s], p), p), p)
            for a, (s, t) in x.algebra.quiver.arrows.items()}
    y = Representation(x.algebra, dict(x.dims), maps, name=x.name, check=False)
    iso = linalg.block_diag([gs[v] for v in x.algebra.vertices])
    return y, ModuleMap(x, y, iso)


def loewy_layers(x: Representation) -> List[Dict[str, int]]:
    """Composition factors of rad^k X / rad^(k+1) X"""
    layers = []
    current = x
    while not current.is_zero():
        rad, _ = radical(current)
        layers.append({v: current.dims[v] - rad.dims[v] for v in x.algebra.vertices})
        if rad.dim == current.dim:
            raise InternalCheckError("Radical series does not terminate")
        current = rad
    return layers


def stack_name(x: Representation) -> str:
    """Loewy-layer notation such as '4/2 3'"""
    if x.is_zero():
        return "0"
    layers = []
    for layer in loewy_layers(x):
        layers.append(" ".join(v for v in x.algebra.vertices for _ in range(layer[v])))
    return "/".join(layers)


def trace_in(m: Representation, x: Representation) -> Tuple[Representation, ModuleMap]:
    """Sum of the images of all maps M -> X"""
    maps = hom_basis(m, x)
    bases = {}
    for v in x.algebra.vertices:
        cols = [f.at(v) for f in maps]
        stacked = np.concatenate(cols, axis=1) if cols else linalg.zeros(x.dims[v], 0)
        bases[v] = linalg.column_space(stacked, x.p)
    return submodule(x, bases)


def in_fac(m: Representation, x: Representation) -> bool:
    return trace_in(m, x)[0].dim == x.dim


def ext1_space(y: Representation, z: Representation):
    """Ext^1(Y, Z) as Hom(Omega Y, Z) modulo maps factoring through the cover"""
    p = y.p
    pres_cover = projective_cover(y)
    p0, pi = pres_cover[1], pres_cover[2]
    omega, iota = kernel(pi)
    hom_oz = HomSpace(omega, z)
    trivial = [hom_oz.vector(h.compose(iota)) for h in hom_basis(p0, z)]
    trivial = linalg.column_space(np.column_stack(trivial), p) if trivial else linalg.zeros(hom_oz.unknowns, 0)
    return p0, pi, omega, iota, hom_oz, trivial


def ext1_dim(y: Representation, z: Representation) -> int:
    p = y.p
    _, _, _, _, hom_oz, trivial = ext1_space(y, z)
    return hom_oz.dim - (linalg.rank(trivial, p) if trivial.shape[1] else 0)


@dataclass
class AlmostSplitSequence:
    left: Representation
    middle: Representation
    right: Representation
    inclusion: ModuleMap
    deflation: ModuleMap
    middle_summands: List[Representation]


def almost_split_sequence(y: Representation, seed: int = 0) -> AlmostSplitSequence:
    """0 -> tau Y -> E -> Y -> 0 from an End(Y)-socle element of Ext^1(Y, tau Y)"""
    p = y.p
    if is_projective(y):
        raise HypothesisError(f"{y.label()} is projective; no almost split sequence ends in it")
    z = tau(y)
    z.name = stack_name(z)
    p0, pi, omega, iota, hom_oz, trivial = ext1_space(y, z)
    end_y = HomSpace(y, y)
    rad = local_radical(end_y.matrices(), p)
    if rad is None:
        raise HypothesisError(f"{y.label()} is not indecomposable")
    end_p0 = HomSpace(p0, p0)
    lift_system = np.column_stack([linalg.mat_mul(pi.matrix, h.matrix, p).reshape(-1) for h in end_p0.maps]) \
        if end_p0.maps else linalg.zeros(y.dim * p0.dim, 0)
    actions = []
    for r in rad:
        target = linalg.mat_mul(r, pi.matrix, p).reshape(-1)
        coeffs = linalg.solve(lift_system, target, p)
        if coeffs is None:
            raise InternalCheckError("Endomorphism does not lift to the projective cover")
        h0 = end_p0.element(coeffs)
        h1 = linalg.solve(iota.matrix, linalg.mat_mul(h0.matrix, iota.matrix, p), p)
        # g -> g after h1 on Hom(Omega Y, Z) in unknown coordinates
        cols = [hom_oz.vector(ModuleMap(omega, z, linalg.mat_mul(g.matrix, h1, p))) for g in hom_oz.maps]
        actions.append(np.column_stack(cols) if cols else linalg.zeros(hom_oz.unknowns, 0))
    k, t = hom_oz.dim, trivial.shape[1]
    if actions:
        blocks = []
        for i, act in enumerate(actions):
            row = [act] + [(-trivial) % p if j == i else linalg.zeros(hom_oz.unknowns, t) for j in range(len(actions))]
            blocks.append(np.concatenate(row, axis=1))
        ker = linalg.kernel_basis(np.concatenate(blocks, axis=0), p)[:k]
    else:
        ker = linalg.identity(k)
    socle_class = None
    for c in range(ker.shape[1]):
        vec = linalg.mat_mul(hom_oz.basis_vectors, ker[:, c], p)
        if not linalg.in_span(trivial, vec, p):
            socle_class = hom_oz.element(ker[:, c])
            break
    if socle_class is None:
        raise InternalCheckError(f"Ext^1({y.label()}, tau) has no nonzero socle element")
    total, incls, projs = direct_sum([z, p0])
    push = incls[1].compose(iota).add(incls[0].compose(socle_class), -1)
    middle, to_middle = cokernel(push)
    inclusion = to_middle.compose(incls[0])
    # [(z, x)] -> pi(x) is well defined on the cokernel
    deflation_matrix = linalg.solve(to_middle.matrix.T, linalg.mat_mul(pi.matrix, projs[1].matrix, p).T, p)
    if deflation_matrix is None:
        raise InternalCheckError("Deflation does not factor through the pushout")
    deflation = ModuleMap(middle, y, deflation_matrix.T)
    middle.name = stack_name(middle)
    parts = decompose(middle, seed)
    logger.debug(f"Almost split sequence ending in {y.label()}: middle {[m.label() for m in parts]}")
    return AlmostSplitSequence(z, middle, y, inclusion, deflation, parts)


def representation_from_action(algebra: BoundQuiverAlgebra, idempotents: Sequence[np.ndarray],
                               arrow_elements: Dict[str, np.ndarray], operator: Callable[[np.ndarray], np.ndarray],
                               p: int, name: str = "", with_basis: bool = False):
    """Module over a presented algebra from a right action on a vector space.

    operator(x) is the matrix of v -> v.x on the underlying space; the vertex
    spaces are the images of the lifted idempotents. With with_basis the
    invertible matrix whose columns are the module basis comes back too.
    """
    spaces = {}
    for v, e in zip(algebra.vertices, idempotents):
        spaces[v] = linalg.column_space(operator(e), p)
    maps = {}
    for a, (s, t) in algebra.quiver.arrows.items():
        moved = linalg.mat_mul(operator(arrow_elements[a]), spaces[s], p)
        sol = linalg.solve(spaces[t], moved, p)
        if sol is None:
            raise InternalCheckError(f"Arrow {a} does not map vertex space {s} into {t}")
        maps[a] = sol
    rep = Representation(algebra, {v: b.shape[1] for v, b in spaces.items()}, maps, name=name)
    if not with_basis:
        return rep
    basis = np.concatenate([spaces[v] for v in algebra.vertices], axis=1)
    if basis.shape[0] != basis.shape[1] or not linalg.is_invertible(basis, p):
        raise InternalCheckError("Vertex spaces do not decompose the acted-on space")
    return rep, basis


def renamed(x: Representation, name: str) -> Representation:
    """Copy of x under another name"""
    return Representation(x.algebra, dict(x.dims), dict(x.maps), name=name, check=False)

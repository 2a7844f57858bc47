"""Projective resolutions, Ext, homological dimensions and add-M approximations."""
import logging
import weakref
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra import linalg
from algebra.errors import HypothesisError
from algebra.modules import (HomSpace, ModuleMap, Representation, decompose, direct_sum, dual, find_isomorphic,
                             kernel, local_radical, map_entries, projective_cover, representation_from_action,
                             simple)
from algebra.quiver import AbstractAlgebra, BoundQuiverAlgebra
from algebra.structure import QuiverWitness, quiverize

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 8


@dataclass(frozen=True)
class DimBound:
    """A homological dimension, exact or only known to be at least value"""
    value: int
    exact: bool = True

    def __str__(self):
        return str(self.value) if self.exact else f">= {self.value}"

    def at_most(self, n: int) -> bool:
        return self.exact and self.value <= n

    def to_json(self):
        return self.value if self.exact else f">={self.value}"


@dataclass
class ProjResolution:
    """Minimal projective resolution ... -> P1 -> P0 -> X"""
    module: Representation
    terms: List[List[str]]
    modules: List[Representation]
    differentials: List[ModuleMap]
    augmentation: ModuleMap
    truncated: bool
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def entries(self, k: int) -> np.ndarray:
        """Block matrix of d_k: P_k -> P_(k-1)"""
        return map_entries(self.differentials[k - 1], self.terms[k], self.terms[k - 1])

    def to_dict(self) -> dict:
        return {"module": self.module.label(), "terms": ["+".join(f"P({v})" for v in t) or "0" for t in self.terms],
                "truncated": self.truncated,
                "differentials": [self.entries(k).tolist() for k in range(1, len(self.terms))]}


_resolutions: "weakref.WeakKeyDictionary[Representation, ProjResolution]" = weakref.WeakKeyDictionary()


def min_proj_resolution(x: Representation, max_len: int = DEFAULT_BOUND) -> ProjResolution:
    """Iterated projective covers, stopping after P_max_len"""
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    cached = _resolutions.get(x)
    if cached is not None and (not cached.truncated or cached.length >= max_len):
        return cached
    verts, p0, pi = projective_cover(x)
    terms, mods, diffs = [verts], [p0], []
    k_mod, incl = kernel(pi)
    truncated = False
    while not k_mod.is_zero():
        if len(terms) > max_len:
            truncated = True
            break
        v, pk, cover = projective_cover(k_mod)
        diffs.append(incl.compose(cover))
        terms.append(v)
        mods.append(pk)
        k_mod, incl = kernel(cover)
    res = ProjResolution(x, terms, mods, diffs, pi, truncated)
    _resolutions[x] = res
    return res


def _pullback_matrix(res: ProjResolution, k: int, y: Representation) -> np.ndarray:
    """Matrix of Hom(P_(k-1), Y) -> Hom(P_k, Y), phi -> phi after d_k.

    Hom(P(u), Y) is identified with Y_u through the image of e_u.
    """
    src, tgt = res.terms[k - 1], res.terms[k]
    entries = res.entries(k)
    rows = sum(y.dims[u] for u in tgt)
    cols = sum(y.dims[w] for w in src)
    out = linalg.zeros(rows, cols)
    r0 = 0
    for i, u in enumerate(tgt):
        c0 = 0
        for j, w in enumerate(src):
            x = entries[j, i]
            if x.any() and y.dims[u] and y.dims[w]:
                act = y.action_matrix(x)
                out[r0: r0 + y.dims[u], c0: c0 + y.dims[w]] = act[y.slice(u), y.slice(w)]
            c0 += y.dims[w]
        r0 += y.dims[u]
    return out


def ext_dim(x: Representation, y: Representation, i: int) -> int:
    """dim Ext^i(X, Y) from the cohomology of Hom(P_., Y)"""
    if i < 0:
        raise ValueError(f"Ext degree must be non-negative, got {i}")
    res = min_proj_resolution(x, i + 1)
    if i > res.length:
        return 0
    p = x.p
    hom_i = sum(y.dims[u] for u in res.terms[i])
    out_rank = linalg.rank(_pullback_matrix(res, i + 1, y), p) if i + 1 <= res.length else 0
    in_rank = linalg.rank(_pullback_matrix(res, i, y), p) if i >= 1 else 0
    return hom_i - out_rank - in_rank


def proj_dim(x: Representation, bound: int = DEFAULT_BOUND) -> DimBound:
    if x.is_zero():
        return DimBound(0)
    res = min_proj_resolution(x, bound)
    if res.truncated:
        return DimBound(bound + 1, exact=False)
    return DimBound(res.length)


def inj_dim(x: Representation, bound: int = DEFAULT_BOUND) -> DimBound:
    """Injective dimension as the projective dimension of the dual"""
    return proj_dim(dual(x), bound)


def global_dim(alg: BoundQuiverAlgebra, bound: int = DEFAULT_BOUND) -> DimBound:
    dims = [proj_dim(simple(alg, v), bound) for v in alg.vertices]
    if not all(d.exact for d in dims):
        return DimBound(bound + 1, exact=False)
    return DimBound(max((d.value for d in dims), default=0))


def basic_summands(mods: Sequence[Representation], seed: int = 0) -> List[Representation]:
    """One representative per isomorphism class of indecomposable summand"""
    out: List[Representation] = []
    for m in mods:
        for part in decompose(m, seed):
            if find_isomorphic(part, out) is None:
                out.append(part)
    return out


def _radical_maps(gens: Sequence[Representation], k: int, l: int) -> List[np.ndarray]:
    """Basis matrices of rad(M_k, M_l)"""
    hom = HomSpace(gens[k], gens[l])
    if k != l:
        return hom.matrices()
    rad = local_radical(hom.matrices(), gens[k].p)
    if rad is None:
        raise HypothesisError(f"{gens[k].label()} is not indecomposable")
    return rad


@dataclass
class Approximation:
    """Minimal right add-M approximation f: M0 -> X"""
    summands: List[int]
    source: Representation
    map: ModuleMap


def right_add_approximation(gens: Sequence[Representation], x: Representation) -> Approximation:
    """Minimal right approximation by pairwise non-isomorphic indecomposables gens.

    Copies of M_k are chosen as a complement of the maps that factor through
    a radical map M_k -> M_l.
    """
    p = x.p
    chosen: List[Tuple[int, ModuleMap]] = []
    homs = [HomSpace(g, x) for g in gens]
    for k, gk in enumerate(gens):
        hom = homs[k]
        if hom.dim == 0:
            continue
        through = []
        for l, gl in enumerate(gens):
            if homs[l].dim == 0:
                continue
            for h in _radical_maps(gens, k, l):
                for g in homs[l].maps:
                    through.append(hom.coordinates(ModuleMap(gk, x, linalg.mat_mul(g.matrix, h, p))))
        span = np.column_stack(through) % p if through else linalg.zeros(hom.dim, 0)
        for c in linalg.extend_columns(span, linalg.identity(hom.dim), p):
            chosen.append((k, hom.maps[c]))
    if not chosen:
        zero = Representation(x.algebra, {}, name="0")
        return Approximation([], zero, ModuleMap.zero(zero, x))
    source, _, projs = direct_sum([gens[k] for k, _ in chosen])
    matrix = sum(linalg.mat_mul(f.matrix, pr.matrix, p) for (_, f), pr in zip(chosen, projs)) % p
    return Approximation([k for k, _ in chosen], source, ModuleMap(source, x, matrix))


@dataclass
class AddMResolution:
    """0 -> M_n -> ... -> M_0 -> X -> 0 built from minimal right approximations"""
    generators: List[Representation]
    module: Representation
    approximations: List[Approximation] = field(default_factory=list)
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.approximations) - 1

    def is_hom_exact(self) -> bool:
        """Hom(M, f_i) is onto Hom(M, K_i) at every step"""
        p = self.module.p
        for approx in self.approximations:
            target = approx.map.target
            for g in self.generators:
                onto = HomSpace(g, target)
                if onto.dim == 0:
                    continue
                images = [onto.coordinates(approx.map.compose(h)) for h in HomSpace(g, approx.source).maps]
                got = linalg.rank(np.column_stack(images), p) if images else 0
                if got != onto.dim:
                    return False
        return True


def add_resolution(gens: Sequence[Representation], x: Representation, bound: int = DEFAULT_BOUND) -> AddMResolution:
    res = AddMResolution(list(gens), x)
    current = x
    while True:
        approx = right_add_approximation(gens, current)
        res.approximations.append(approx)
        if not approx.map.is_surjective():
            raise HypothesisError("Approximation is not onto; the generators do not generate the module category")
        k_mod, _ = kernel(approx.map)
        if k_mod.is_zero():
            return res
        if len(res.approximations) > bound:
            res.truncated = True
            return res
        current = k_mod


def addM_resolution_length(gens: Sequence[Representation], x: Representation,
                           bound: int = DEFAULT_BOUND) -> Tuple[DimBound, AddMResolution]:
    res = add_resolution(gens, x, bound)
    if res.truncated:
        return DimBound(bound, exact=False), res
    return DimBound(res.length), res


@dataclass
class EndAlgebra:
    """End(M1 + ... + Mn) for pairwise non-isomorphic indecomposables, product b.b' = b after b'.

    homs[(k, l)] is the space of maps M_l -> M_k; it may hold module maps or
    chain maps up to homotopy, anything with dim, maps and coordinates.
    """
    summands: list
    algebra: AbstractAlgebra
    blocks: Dict[Tuple[int, int], List[int]]
    homs: Dict[Tuple[int, int], object]
    idempotents: List[np.ndarray]
    radical: np.ndarray
    local_radicals: Dict[int, np.ndarray]
    _presentation: Optional[Tuple[BoundQuiverAlgebra, QuiverWitness]] = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def block_of(self, b: int) -> Tuple[int, int, int]:
        """(target index, source index, position in the block) of basis element b"""
        for (k, l), idx in self.blocks.items():
            if idx and idx[0] <= b <= idx[-1]:
                return k, l, b - idx[0]
        raise IndexError(b)

    def element(self, k: int, l: int, coeffs) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.blocks[(k, l)]] = coeffs
        return out

    def radical_maps(self, k: int, l: int) -> list:
        """Representatives spanning rad(M_l, M_k)"""
        hom = self.homs[(k, l)]
        if k != l:
            return list(hom.maps)
        return [_combine(hom.maps, self.local_radicals[k][:, c], self.algebra.p)
                for c in range(self.local_radicals[k].shape[1])]

    def presentation(self, seed: int = 0) -> Tuple[BoundQuiverAlgebra, QuiverWitness]:
        if self._presentation is None:
            labels = [str(k + 1) for k in range(len(self.summands))]
            self._presentation = quiverize(self.algebra, self.idempotents, labels, self.radical, seed=seed,
                                           name=self.algebra.name)
        return self._presentation


def _combine(maps: list, coeffs, p: int):
    out = None
    for c, f in zip(np.asarray(coeffs).reshape(-1), maps):
        if c:
            out = f.scale(int(c)) if out is None else out.add(f, int(c))
    return out if out is not None else maps[0].scale(0)


def build_end_algebra(summands: Sequence, homs: Dict[Tuple[int, int], object], identities: Sequence,
                      p: int, name: str = "End") -> EndAlgebra:
    """Structure constants of the block algebra with the radical read off block by block.

    Off-diagonal blocks are radical; a diagonal block is local and its radical
    is found in the left regular representation of the block.
    """
    n = len(summands)
    blocks: Dict[Tuple[int, int], List[int]] = {}
    total = 0
    for k in range(n):
        for l in range(n):
            blocks[(k, l)] = list(range(total, total + homs[(k, l)].dim))
            total += homs[(k, l)].dim
    mult = np.zeros((total, total, total), dtype=np.int64)
    for (k, l), idx in blocks.items():
        for m in range(n):
            idx2 = blocks[(l, m)]
            if not idx or not idx2 or not blocks[(k, m)]:
                continue
            target = homs[(k, m)]
            for i, bi in zip(idx, homs[(k, l)].maps):
                for j, bj in zip(idx2, homs[(l, m)].maps):
                    mult[i, j, blocks[(k, m)]] = target.coordinates(bi.compose(bj))
    idempotents = []
    for k in range(n):
        e = np.zeros(total, dtype=np.int64)
        e[blocks[(k, k)]] = homs[(k, k)].coordinates(identities[k])
        idempotents.append(e)
    alg = AbstractAlgebra(mult, sum(idempotents) % p, p, name=name)
    rad_cols = []
    local_radicals = {}
    for (k, l), idx in blocks.items():
        if k != l:
            rad_cols += [linalg.identity(total)[:, b] for b in idx]
            continue
        mats = [alg.left_matrix(linalg.identity(total)[:, b])[np.ix_(idx, idx)] for b in idx]
        local = local_radical(mats, p)
        if local is None:
            raise HypothesisError(f"Summand {k + 1} of {name} has a non-local endomorphism ring")
        unit = idempotents[k][idx]
        coords = [linalg.mat_mul(r, unit, p) for r in local]
        local_radicals[k] = np.column_stack(coords) if coords else linalg.zeros(len(idx), 0)
        for c in coords:
            v = np.zeros(total, dtype=np.int64)
            v[idx] = c
            rad_cols.append(v)
    radical = np.column_stack(rad_cols) if rad_cols else linalg.zeros(total, 0)
    logger.debug(f"{name} of {n} summands has dimension {total}")
    return EndAlgebra(list(summands), alg, blocks, homs, idempotents, radical, local_radicals)


def endomorphism_algebra(mods: Sequence[Representation], name: str = "End") -> EndAlgebra:
    if not mods:
        raise ValueError("Endomorphism algebra of the zero module")
    n = len(mods)
    homs = {(k, l): HomSpace(mods[l], mods[k]) for k in range(n) for l in range(n)}
    return build_end_algebra(mods, homs, [ModuleMap.identity(m) for m in mods], mods[0].p, name)


def action_module(end: EndAlgebra, spaces: Sequence, precompose, p: int, name: str = "",
                  seed: int = 0) -> Tuple[Representation, np.ndarray]:
    """Right module over the presented End from spaces[k] = Hom(M_k, Z), acting by precomposition.

    precompose(g, b) is g after b. Returns the module and its basis in the
    stacked coordinates of the spaces.
    """
    presented, witness = end.presentation(seed)
    offsets = np.cumsum([0] + [s.dim for s in spaces])
    dim = int(offsets[-1])
    ops = []
    for b in range(end.dim):
        k, l, pos = end.block_of(b)
        op = linalg.zeros(dim, dim)
        bmap = end.homs[(k, l)].maps[pos]
        # Hom(M_k, Z) -> Hom(M_l, Z)
        for c, g in enumerate(spaces[k].maps):
            op[offsets[l]: offsets[l + 1], offsets[k] + c] = spaces[l].coordinates(precompose(g, bmap))
        ops.append(op)
    stacked = np.stack(ops) if ops else np.zeros((0, dim, dim), dtype=np.int64)

    def operator(z):
        return linalg.mod_p(np.tensordot(np.asarray(z, dtype=np.int64), stacked, axes=1), p)

    return representation_from_action(presented, witness.idempotents, witness.arrow_elements, operator, p,
                                      name=name, with_basis=True)


def hom_functor_module(end: EndAlgebra, x: Representation, seed: int = 0) -> Representation:
    """Hom(M, X) as a right module over the presented End(M)"""
    spaces = [HomSpace(m, x) for m in end.summands]
    rep, _ = action_module(end, spaces, lambda g, b: g.compose(b), x.p, name=f"Hom(M, {x.label()})", seed=seed)
    return rep


def gldim_end(mods: Sequence[Representation], bound: int = DEFAULT_BOUND, seed: int = 0) -> DimBound:
    """gl.dim End(M) for M the sum of the given modules, after removing repeated summands"""
    gens = basic_summands(mods, seed)
    end = endomorphism_algebra(gens)
    presented, _ = end.presentation(seed)
    value = global_dim(presented, bound)
    logger.info(f"gl.dim End of {len(gens)} summands: {value}")
    return value

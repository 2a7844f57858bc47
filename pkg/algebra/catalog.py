"""Indecomposable catalogs: knitting along the AR translate, and a brute-force oracle."""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence

import networkx as nx
import numpy as np
import pandas as pd

from algebra import linalg
from algebra.errors import IncompleteCatalogError
from algebra.modules import (AlmostSplitSequence, Representation, almost_split_sequence, decompose,
                             find_isomorphic, injective, is_indecomposable, is_injective, is_projective,
                             projective, quotient, radical, renamed, simple, socle, stack_name, tau_inv)
from algebra.quiver import BoundQuiverAlgebra

logger = logging.getLogger(__name__)

DEFAULT_CATALOG_BOUND = 4


@dataclass
class IndecCatalog:
    """Pairwise non-isomorphic indecomposables, with AR translate data"""
    algebra: BoundQuiverAlgebra
    modules: List[Representation]
    complete: bool
    bound: int
    tau_of: Dict[int, Optional[int]] = field(default_factory=dict)
    middles: Dict[int, List[int]] = field(default_factory=dict)
    projective: List[bool] = field(default_factory=list)
    injective: List[bool] = field(default_factory=list)

    def __len__(self):
        return len(self.modules)

    def __iter__(self) -> Iterator[Representation]:
        return iter(self.modules)

    def __getitem__(self, k: int) -> Representation:
        return self.modules[k]

    def require_complete(self, what: str = "this operation"):
        if not self.complete:
            raise IncompleteCatalogError(f"{what} needs a complete catalog of {self.algebra.name or 'the algebra'}; "
                                         f"knitting stopped at dimension bound {self.bound}")

    def index_of(self, x: Representation) -> Optional[int]:
        return find_isomorphic(x, self.modules)

    def names(self) -> List[str]:
        return [m.label() for m in self.modules]

    def by_name(self, name: str) -> Representation:
        for m in self.modules:
            if m.label() == name:
                return m
        raise KeyError(f"No module named {name!r}; catalog has {self.names()}")

    def tau_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.modules)))
        for k, t in self.tau_of.items():
            if t is not None:
                g.add_edge(k, t)
        return g

    def tau_orbits(self) -> List[List[str]]:
        """Orbits of the translate, each listed from its projective end"""
        g = self.tau_graph()
        orbits = []
        for comp in nx.weakly_connected_components(g):
            sub = g.subgraph(comp)
            order = list(reversed(list(nx.topological_sort(sub))))
            orbits.append([self.modules[k].label() for k in order])
        orbits.sort(key=lambda o: (-len(o), o))
        return orbits

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for k, m in enumerate(self.modules):
            t = self.tau_of.get(k)
            rows.append({"module": m.label(), "dims": " ".join(map(str, m.dim_vector)),
                         "projective": self.projective[k], "injective": self.injective[k],
                         "tau": self.modules[t].label() if t is not None else "",
                         "ar_middle": ", ".join(self.modules[j].label() for j in self.middles.get(k, []))})
        return pd.DataFrame(rows)

    def to_records(self) -> List[dict]:
        out = []
        for k, m in enumerate(self.modules):
            rec = m.to_dict()
            t = self.tau_of.get(k)
            rec.update({"tau_of": self.modules[t].label() if t is not None else None,
                        "is_projective": self.projective[k], "is_injective": self.injective[k]})
            out.append(rec)
        return out


def _seeds(alg: BoundQuiverAlgebra, seed: int) -> List[Representation]:
    out = []
    for v in alg.vertices:
        out += [projective(alg, v), injective(alg, v), simple(alg, v)]
    for v in alg.vertices:
        rad, _ = radical(projective(alg, v))
        out += decompose(rad, seed) if rad.dim else []
        inj = injective(alg, v)
        _, soc_incl = socle(inj)
        top_part, _ = quotient(inj, {w: soc_incl.at(w) for w in alg.vertices})
        out += decompose(top_part, seed) if top_part.dim else []
    return out


def enumerate_indecomposables(alg: BoundQuiverAlgebra, bound: int, seed: int = 0) -> IndecCatalog:
    """Knit the AR quiver from projectives, injectives and simples.

    The catalog is complete when the closure under tau, tau^-1 and almost
    split middle terms stays inside the dimension bound.
    """
    if bound < 1:
        raise ValueError(f"Dimension bound must be positive, got {bound}")
    queue = _seeds(alg, seed)
    modules: List[Representation] = []
    sequences: Dict[int, AlmostSplitSequence] = {}
    exceeded = False
    while queue:
        x = queue.pop(0)
        if max(x.dim_vector) > bound:
            exceeded = True
            continue
        if find_isomorphic(x, modules) is not None:
            continue
        x = renamed(x, stack_name(x))
        modules.append(x)
        if not is_projective(x):
            seq = almost_split_sequence(x, seed)
            sequences[id(x)] = seq
            queue.append(seq.left)
            queue.extend(seq.middle_summands)
        if not is_injective(x):
            queue.append(tau_inv(x))
        logger.debug(f"Knitted {x.label()}; {len(queue)} modules queued")
    modules.sort(key=lambda m: (m.dim, m.dim_vector, m.label()))
    catalog = IndecCatalog(alg, modules, complete=not exceeded, bound=bound)
    _annotate(catalog, sequences)
    if exceeded:
        logger.warning(f"Catalog of {alg.name or 'algebra'} is incomplete at bound {bound}: "
                       f"{len(modules)} modules found")
    else:
        logger.info(f"Knitted complete catalog of {alg.name or 'algebra'}: {len(modules)} indecomposables")
    return catalog


def _annotate(catalog: IndecCatalog, sequences: Dict[int, AlmostSplitSequence]):
    for k, m in enumerate(catalog.modules):
        seq = sequences.get(id(m))
        catalog.projective.append(seq is None)
        catalog.injective.append(is_injective(m))
        if seq is None:
            catalog.tau_of[k] = None
            continue
        catalog.tau_of[k] = catalog.index_of(seq.left)
        catalog.middles[k] = [j for j in (catalog.index_of(part) for part in seq.middle_summands) if j is not None]


def _support_connected(alg: BoundQuiverAlgebra, dims: Sequence[int]) -> bool:
    support = [v for v, d in zip(alg.vertices, dims) if d]
    if not support:
        return False
    g = alg.quiver.graph().to_undirected().subgraph(support)
    return nx.is_connected(g)


def _all_matrices(rows: int, cols: int, p: int) -> Iterator[np.ndarray]:
    if rows * cols == 0:
        yield linalg.zeros(rows, cols)
        return
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def _rank_forms(rows: int, cols: int) -> Iterator[np.ndarray]:
    for r in range(min(rows, cols) + 1):
        m = linalg.zeros(rows, cols)
        m[list(range(r)), list(range(r))] = 1
        yield m


def _may_be_indecomposable(alg: BoundQuiverAlgebra, dv: Dict[str, int]) -> bool:
    """False when some vertex outweighs its neighbours, so its simple splits off"""
    arrows = alg.quiver.arrows.values()
    support = [v for v, d in dv.items() if d]
    if len(support) == 1:
        v = support[0]
        return dv[v] == 1 or any(s == t == v for s, t in arrows)
    for v in support:
        around = sum(dv[t] for s, t in arrows if s == v) + sum(dv[s] for s, t in arrows if t == v)
        if dv[v] > around:
            return False
    return True


def _normal_arrow(arrows, dv: Dict[str, int]) -> Optional[int]:
    """The arrow between distinct vertices with the largest matrix"""
    best = [(dv[s] * dv[t], -k) for k, (_, (s, t)) in enumerate(arrows) if s != t]
    return -max(best)[1] if best else None


def brute_force_indecomposables(alg: BoundQuiverAlgebra, bound: int, max_candidates: int = 4096) -> IndecCatalog:
    """Every indecomposable with all vertex dimensions at most bound, by exhaustive search.

    Dimension vectors where a simple must split off are skipped. For each
    remaining vector the largest arrow between distinct vertices is put in
    rank normal form and the other arrows run over all matrices. The catalog
    is flagged incomplete when the candidate cap is hit.
    """
    p = alg.p
    arrows = list(alg.quiver.arrows.items())
    found: List[Representation] = []
    tried = 0
    complete = True
    for dims in itertools.product(range(bound + 1), repeat=len(alg.vertices)):
        if not _support_connected(alg, dims):
            continue
        dv = dict(zip(alg.vertices, dims))
        if not _may_be_indecomposable(alg, dv):
            continue
        normal = _normal_arrow(arrows, dv)
        choices = []
        for k, (a, (s, t)) in enumerate(arrows):
            gen = _rank_forms(dv[t], dv[s]) if k == normal else _all_matrices(dv[t], dv[s], p)
            choices.append(list(gen))
        for mats in itertools.product(*choices):
            tried += 1
            if tried > max_candidates:
                complete = False
                break
            try:
                x = Representation(alg, dv, {a: m for (a, _), m in zip(arrows, mats)})
            except ValueError:
                continue
            if not is_indecomposable(x):
                continue
            if find_isomorphic(x, found) is None:
                x = renamed(x, stack_name(x))
                found.append(x)
        if not complete:
            logger.warning(f"Brute-force search stopped after {max_candidates} candidates")
            break
    found.sort(key=lambda m: (m.dim, m.dim_vector, m.label()))
    catalog = IndecCatalog(alg, found, complete=complete, bound=bound)
    catalog.projective = [is_projective(m) for m in found]
    catalog.injective = [is_injective(m) for m in found]
    logger.info(f"Brute force found {len(found)} indecomposables among {min(tried, max_candidates)} candidates")
    return catalog


def same_catalog(a: IndecCatalog, b: IndecCatalog) -> bool:
    """True when both catalogs list the same isomorphism classes"""
    if len(a) != len(b):
        return False
    return all(b.index_of(m) is not None for m in a)


@lru_cache(maxsize=None)
def cached_catalog(alg: BoundQuiverAlgebra, bound: int = DEFAULT_CATALOG_BOUND, seed: int = 0) -> IndecCatalog:
    """Knitted catalog, computed once per algebra and bound"""
    return enumerate_indecomposables(alg, bound, seed)

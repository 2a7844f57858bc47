"""Representation-finiteness, representation dimension and the comparison checks."""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from algebra.catalog import DEFAULT_CATALOG_BOUND, IndecCatalog, cached_catalog
from algebra.complexes import TwoTermComplex, enumerate_2term_silting, is_silting, is_tilting
from algebra.errors import HypothesisError, IncompleteCatalogError, WorkbenchError
from algebra.homological import (DEFAULT_BOUND, DimBound, addM_resolution_length, basic_summands,
                                 endomorphism_algebra, gldim_end)
from algebra.modules import Representation, dual_module, find_isomorphic, regular_module
from algebra.quiver import BoundQuiverAlgebra
from algebra.silting import (analysis, check_id_restriction, is_separating, is_splitting, quotient_by_annihilator,
                             tilting_flags)
from algebra.verdicts import CheckResult, inapplicable, verdict_of

logger = logging.getLogger(__name__)

MAX_CANDIDATES = 4096

DYNKIN_ARMS = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
EUCLIDEAN_ARMS = {(2, 2, 2): "~E6", (1, 3, 3): "~E7", (1, 2, 5): "~E8"}


def _component_type(g: nx.MultiGraph) -> str:
    n = g.number_of_nodes()
    simple = nx.Graph(g)
    if g.number_of_edges() != simple.number_of_edges():
        return "~A1" if n == 2 and g.number_of_edges() == 2 else "wild"
    if not nx.is_tree(simple):
        if all(d == 2 for _, d in simple.degree()):
            return f"~A{n - 1}"
        return "wild"
    degrees = dict(simple.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) == 1:
        center = branch[0]
        rest = simple.copy()
        rest.remove_node(center)
        arms = tuple(sorted(len(c) for c in nx.connected_components(rest)))
        if len(arms) == 4:
            return "~D4" if arms == (1, 1, 1, 1) else "wild"
        if len(arms) != 3:
            return "wild"
        if arms[:2] == (1, 1):
            return f"D{n}"
        return DYNKIN_ARMS.get(arms) or EUCLIDEAN_ARMS.get(arms) or "wild"
    if len(branch) == 2 and all(degrees[v] == 3 for v in branch):
        leaves = [v for v, d in degrees.items() if d == 1]
        if all(any(simple.has_edge(v, b) for b in branch) for v in leaves) and len(leaves) == 4:
            return f"~D{n - 1}"
    return "wild"


def hereditary_type(alg: BoundQuiverAlgebra) -> List[str]:
    """Dynkin or Euclidean label of each connected component of the underlying graph"""
    g = nx.MultiGraph(alg.quiver.graph().to_undirected())
    labels = [_component_type(g.subgraph(c).copy()) for c in nx.connected_components(g)]
    return sorted(labels)


def _is_dynkin(label: str) -> bool:
    return label != "wild" and not label.startswith("~")


@dataclass
class Finiteness:
    kind: str
    count: Optional[int] = None
    reason: str = ""

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return f"finite({self.count})"
        return f"{self.kind}({self.reason})"


def is_rep_finite(alg: BoundQuiverAlgebra, bound: int = DEFAULT_CATALOG_BOUND,
                  catalog: Optional[IndecCatalog] = None, seed: int = 0) -> Finiteness:
    """Finite when knitting closes up; hereditary algebras are decided by their graph"""
    if alg.is_hereditary():
        types = hereditary_type(alg)
        if not all(_is_dynkin(t) for t in types):
            return Finiteness("infinite", reason=f"underlying graph of type {' + '.join(types)}")
    catalog = catalog if catalog is not None else cached_catalog(alg, bound, seed)
    if catalog.complete:
        return Finiteness("finite", len(catalog))
    return Finiteness("unknown", reason=f"knitting exceeded dimension bound {catalog.bound}")


def generator_cogenerators(catalog: IndecCatalog, max_candidates: int = MAX_CANDIDATES,
                           seed: int = 0) -> List[List[Representation]]:
    """Subsets of the catalog containing every indecomposable projective and injective, smallest first"""
    alg = catalog.algebra
    required = basic_summands([regular_module(alg), dual_module(alg)], seed)
    base = [m for m in catalog.modules if find_isomorphic(m, required) is not None]
    if len(base) != len(required):
        raise IncompleteCatalogError("Catalog misses a projective or injective indecomposable")
    others = [m for m in catalog.modules if find_isomorphic(m, required) is None]
    out = []
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            out.append(base + list(extra))
            if len(out) >= max_candidates:
                logger.warning(f"Generator-cogenerator search capped at {max_candidates} candidates")
                return out
    return out


def _label(mods: Sequence[Representation]) -> str:
    return " + ".join(m.label() for m in mods)


def auslander_generator(alg: BoundQuiverAlgebra, catalog: Optional[IndecCatalog] = None,
                        bound: int = DEFAULT_BOUND, max_candidates: int = MAX_CANDIDATES, seed: int = 0,
                        catalog_bound: int = DEFAULT_CATALOG_BOUND) -> Tuple[List[Representation], DimBound, pd.DataFrame]:
    """A generator-cogenerator of least gl.dim End(M), with the table of evaluated candidates"""
    catalog = catalog if catalog is not None else cached_catalog(alg, catalog_bound, seed)
    if not catalog.complete:
        raise HypothesisError(f"{alg.name or 'Algebra'} is not known to be representation-finite")
    floor = 0 if alg.is_semisimple() else 2
    best: Optional[Tuple[List[Representation], DimBound]] = None
    rows = []
    for mods in generator_cogenerators(catalog, max_candidates, seed):
        value = gldim_end(mods, bound, seed)
        rows.append({"generator": _label(mods), "summands": len(mods), "gl.dim End": str(value)})
        if value.exact and (best is None or not best[1].exact or value.value < best[1].value):
            best = (mods, value)
        if best is not None and best[1].exact and best[1].value <= floor:
            break
    if best is None:
        raise HypothesisError(f"No generator-cogenerator of {alg.name or 'the algebra'} has finite gl.dim End "
                              f"below {bound + 1}")
    logger.info(f"Auslander generator of {alg.name or 'algebra'}: {_label(best[0])} with gl.dim End {best[1]}")
    return best[0], best[1], pd.DataFrame(rows, columns=["generator", "summands", "gl.dim End"])


@dataclass
class RepDimReport:
    algebra: BoundQuiverAlgebra
    finiteness: Finiteness
    value: Optional[int]
    lower: int
    upper: Optional[int]
    generator: List[Representation] = field(default_factory=list)
    gldim: Optional[DimBound] = None
    candidates: pd.DataFrame = field(default_factory=pd.DataFrame)
    note: str = ""

    def __str__(self):
        if self.value is not None:
            return str(self.value)
        return f">= {self.lower}" + (f", <= {self.upper}" if self.upper is not None else "")

    def to_dict(self) -> dict:
        return {"algebra": self.algebra.name, "finiteness": str(self.finiteness), "rep_dim": self.value,
                "lower": self.lower, "upper": self.upper, "generator": [m.label() for m in self.generator],
                "gldim_end": self.gldim.to_json() if self.gldim is not None else None, "note": self.note}


@lru_cache(maxsize=None)
def rep_dim(alg: BoundQuiverAlgebra, catalog_bound: int = DEFAULT_CATALOG_BOUND, bound: int = DEFAULT_BOUND,
            max_candidates: int = MAX_CANDIDATES, seed: int = 0) -> RepDimReport:
    """Representation dimension, exact for finite and hereditary algebras and bounded otherwise"""
    finiteness = is_rep_finite(alg, catalog_bound, seed=seed)
    if alg.is_semisimple():
        mods = basic_summands([regular_module(alg)], seed)
        return RepDimReport(alg, finiteness, 0, 0, 0, mods, gldim_end(mods, bound, seed),
                            note="semisimple algebras are given gl.dim End(A) = 0")
    if finiteness.finite:
        catalog = cached_catalog(alg, catalog_bound, seed)
        full = gldim_end(catalog.modules, bound, seed)
        if not (full.exact and full.value == 2):
            raise HypothesisError(f"gl.dim End of the full catalog of {alg.name or 'algebra'} is {full}, not 2")
        mods, value, table = auslander_generator(alg, catalog, bound, max_candidates, seed)
        return RepDimReport(alg, finiteness, value.value, 2, 2, mods, value, table,
                            note="certified by gl.dim End of the full catalog")
    if finiteness.kind == "infinite" and alg.is_hereditary():
        return RepDimReport(alg, finiteness, 3, 3, 3, note="representation-infinite hereditary")
    lower = 3 if finiteness.kind == "infinite" else 2
    return RepDimReport(alg, finiteness, None, lower, None, note=finiteness.reason)


def verify_add_resolutions(gens: Sequence[Representation], catalog: IndecCatalog, bound: int = DEFAULT_BOUND,
                           seed: int = 0) -> CheckResult:
    """gl.dim End(M) = 2 + the longest add(M)-resolution over the catalog"""
    check = "add(M)-resolution length"
    catalog.require_complete("add(M)-resolution check")
    gl = gldim_end(gens, bound, seed)
    lengths = [addM_resolution_length(list(gens), x, bound)[0] for x in catalog.modules]
    if not gl.exact or not all(d.exact for d in lengths):
        return inapplicable(check, f"a dimension exceeds the bound {bound}")
    longest = max((d.value for d in lengths), default=0)
    expected = gl.value - 2 if gl.value >= 2 else 0
    return verdict_of(check, longest == expected, f"gl.dim End(M) = {gl}, longest resolution {longest}",
                      gldim=gl, longest=longest)


def _rep_dims(P: TwoTermComplex, seed: int, catalog_bound: int) -> Tuple[RepDimReport, RepDimReport]:
    a = analysis(P, seed=seed, catalog_bound=catalog_bound)
    return rep_dim(P.algebra, catalog_bound, seed=seed), rep_dim(a.b_algebra, catalog_bound, seed=seed)


def _values(ra: RepDimReport, rb: RepDimReport) -> dict:
    return {"rep_dim_A": str(ra), "rep_dim_B": str(rb)}


def verify_main_theorem(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                        catalog_bound: int = DEFAULT_CATALOG_BOUND) -> CheckResult:
    """rep.dim B = rep.dim A for separating silting P with id X <= 1 on F(P)"""
    check = "rep.dim comparison"
    if not is_silting(P, seed):
        return inapplicable(check, f"{P.label()} is not silting")
    ra, rb = _rep_dims(P, seed, catalog_bound)
    values = _values(ra, rb)
    try:
        if not is_separating(P, catalog, seed):
            return inapplicable(check, f"hypothesis separating fails; rep.dim A = {ra}, rep.dim B = {rb}", **values)
        ok, offenders = check_id_restriction(P, catalog, seed)
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc), **values)
    if not ok:
        worst = ", ".join(f"{x.label()} (id {d})" for x, d in offenders)
        return inapplicable(check, f"hypothesis id-restriction fails at {worst}; "
                                   f"rep.dim A = {ra}, rep.dim B = {rb}", **values)
    if ra.value is None or rb.value is None:
        return inapplicable(check, f"rep.dim not determined: A {ra}, B {rb}", **values)
    return verdict_of(check, ra.value == rb.value, f"rep.dim A = {ra}, rep.dim B = {rb}", **values)


def _end_presentation(mods: Sequence[Representation], seed: int, name: str) -> BoundQuiverAlgebra:
    end = endomorphism_algebra(basic_summands(mods, seed), name=name)
    return end.presentation(seed)[0]


def verify_quotient_rep_dim(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                            catalog_bound: int = DEFAULT_CATALOG_BOUND) -> CheckResult:
    """rep.dim End(H^0 P) = rep.dim A/ann H^0(P)"""
    check = "rep.dim of End(H0)"
    if not is_silting(P, seed):
        return inapplicable(check, f"{P.label()} is not silting")
    try:
        if not (is_separating(P, catalog, seed) and is_splitting(P, catalog, seed)):
            return inapplicable(check, f"{P.label()} is not both separating and splitting")
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    quot, _, t = quotient_by_annihilator(P, seed)
    end_t = _end_presentation([t], seed, name="End(H0)")
    r_end, r_quot = rep_dim(end_t, catalog_bound, seed=seed), rep_dim(quot, catalog_bound, seed=seed)
    if r_end.value is None or r_quot.value is None:
        return inapplicable(check, f"rep.dim not determined: End(H0) {r_end}, A/ann {r_quot}")
    return verdict_of(check, r_end.value == r_quot.value, f"rep.dim End(H0) = {r_end}, rep.dim A/ann = {r_quot}")


def verify_hereditary_corollary(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                                catalog_bound: int = DEFAULT_CATALOG_BOUND) -> CheckResult:
    """rep.dim B <= 3, and B is representation-finite with A"""
    check = "hereditary bound"
    if not P.algebra.is_hereditary():
        return inapplicable(check, f"{P.algebra.name or 'algebra'} is not hereditary")
    if not is_silting(P, seed):
        return inapplicable(check, f"{P.label()} is not silting")
    try:
        if not is_separating(P, catalog, seed):
            return inapplicable(check, f"{P.label()} is not separating")
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    ra, rb = _rep_dims(P, seed, catalog_bound)
    b_alg = analysis(P, seed=seed, catalog_bound=catalog_bound).b_algebra
    finite_a = is_rep_finite(P.algebra, catalog_bound, seed=seed).finite
    finite_b = is_rep_finite(b_alg, catalog_bound, seed=seed).finite
    bounded = rb.value is not None and rb.value <= 3 or rb.upper is not None and rb.upper <= 3
    transfer = finite_b or not finite_a
    return verdict_of(check, bounded and transfer,
                      f"rep.dim B = {rb} (A: {ra}); A finite = {finite_a}, B finite = {finite_b}",
                      **_values(ra, rb))


def verify_tilting_corollary(t: Representation, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                             catalog_bound: int = DEFAULT_CATALOG_BOUND) -> CheckResult:
    """rep.dim A = rep.dim End(T) for a separating and splitting tilting module T"""
    check = "rep.dim across a tilting module"
    flags = tilting_flags(t, catalog, seed, catalog_bound)
    if not flags.tilting:
        return inapplicable(check, f"{t.label()} is not a tilting module")
    if not flags.separating or not flags.splitting:
        return inapplicable(check, f"{t.label()} is not both separating and splitting "
                                   f"(separating {flags.separating}, splitting {flags.splitting})")
    end_t = _end_presentation([t], seed, name=f"End({t.label()})")
    ra, rb = rep_dim(t.algebra, catalog_bound, seed=seed), rep_dim(end_t, catalog_bound, seed=seed)
    if ra.value is None or rb.value is None:
        return inapplicable(check, f"rep.dim not determined: A {ra}, End(T) {rb}")
    return verdict_of(check, ra.value == rb.value, f"rep.dim A = {ra}, rep.dim End(T) = {rb}")


def flag_or_none(fn, *args) -> Optional[bool]:
    """fn(*args), or None when a catalog is too small to decide"""
    try:
        return fn(*args)
    except IncompleteCatalogError:
        return None


def scan(alg: BoundQuiverAlgebra, catalog: Optional[IndecCatalog] = None, seed: int = 0,
         catalog_bound: int = DEFAULT_CATALOG_BOUND) -> Tuple[pd.DataFrame, List[CheckResult]]:
    """Every two-term silting complex with its flags and the rep.dim comparison"""
    catalog = catalog if catalog is not None else cached_catalog(alg, catalog_bound, seed)
    rows, results = [], []
    for cx in enumerate_2term_silting(alg, catalog, seed):
        try:
            separating = flag_or_none(is_separating, cx, catalog, seed)
            splitting = flag_or_none(is_splitting, cx, catalog, seed)
            id_ok = flag_or_none(lambda *a: check_id_restriction(*a)[0], cx, catalog, seed)
            result = verify_main_theorem(cx, catalog, seed, catalog_bound)
        except WorkbenchError as exc:
            logger.warning(f"Scan of {cx.label()} stopped: {exc}")
            separating = splitting = id_ok = None
            result = verdict_of("rep.dim comparison", False, str(exc))
        results.append(result)
        rows.append({"complex": cx.label(), "silting": True, "tilting": is_tilting(cx, seed),
                     "separating": separating, "splitting": splitting, "id_restriction": id_ok,
                     "rep.dim comparison": result.verdict.value})
    logger.info(f"Scanned {len(rows)} silting complexes over {alg.name or 'algebra'}")
    return pd.DataFrame(rows), results

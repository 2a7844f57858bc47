"""Torsion pairs of two-term silting complexes and the checks built on them."""
import logging
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from algebra import linalg
from algebra.catalog import DEFAULT_CATALOG_BOUND, IndecCatalog, cached_catalog
from algebra.complexes import (TwoTermComplex, basic_summands, complex_end_algebra, enumerate_2term_silting,
                               induced_Q, is_silting, is_tilting, nakayama_complex)
from algebra.errors import IncompleteCatalogError, InternalCheckError, WorkbenchError
from algebra.homological import (DEFAULT_BOUND, DimBound, action_module, endomorphism_algebra, ext_dim,
                                 basic_summands as basic_module_summands,
                                 hom_functor_module, inj_dim, proj_dim)
from algebra.modules import (HomSpace, ModuleMap, Representation, almost_split_sequence, decompose, ext1_dim,
                             find_isomorphic, hom_dim, in_fac, is_injective, is_projective, projective_sum,
                             renamed, representation_from_action, stack_name, tau)
from algebra.quiver import BoundQuiverAlgebra
from algebra.structure import QuotientWitness, quotient_algebra
from algebra.verdicts import CheckResult, inapplicable, verdict_of

logger = logging.getLogger(__name__)


@dataclass
class DbHom:
    """Hom(P, Sigma^shift X) in the derived category for a module X"""
    complex: TwoTermComplex
    module: Representation
    shift: int
    maps: List[ModuleMap] = field(default_factory=list)
    _system: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return len(self.maps)

    def is_zero(self) -> bool:
        return not self.maps

    def coordinates(self, f: ModuleMap) -> np.ndarray:
        if not self.maps:
            return np.zeros(0, dtype=np.int64)
        sol = linalg.solve(self._system, f.matrix.reshape(-1), self.module.p)
        if sol is None:
            raise InternalCheckError(f"Map does not represent a class in Hom(P, Sigma^{self.shift} {self.module.label()})")
        return sol[: self.dim]


def dbhom(P: TwoTermComplex, x: Representation, i: int) -> DbHom:
    """Degree 0: maps P^0 -> X killing d. Degree 1: maps P^-1 -> X modulo those through d."""
    p = x.p
    if i == 0:
        hom = HomSpace(P.p0, x)
        if not hom.dim:
            return DbHom(P, x, 0)
        cols = [f.compose(P.d).matrix.reshape(-1) for f in hom.maps]
        ker = linalg.kernel_basis(np.column_stack(cols), p)
        maps = [hom.element(ker[:, c]) for c in range(ker.shape[1])]
        system = np.column_stack([f.matrix.reshape(-1) for f in maps]) if maps else None
        return DbHom(P, x, 0, maps, system)
    if i == 1:
        hom = HomSpace(P.pm1, x)
        if not hom.dim:
            return DbHom(P, x, 1)
        size = x.dim * P.pm1.dim
        through = [h.compose(P.d).matrix.reshape(-1) for h in HomSpace(P.p0, x).maps]
        null = linalg.column_space(np.column_stack(through), p) if through else linalg.zeros(size, 0)
        every = np.column_stack([f.matrix.reshape(-1) for f in hom.maps])
        keep = linalg.extend_columns(null, every, p)
        maps = [hom.maps[c] for c in keep]
        system = np.concatenate([every[:, keep], null], axis=1) if maps else None
        return DbHom(P, x, 1, maps, system)
    return DbHom(P, x, i)


def in_torsion_class(P: TwoTermComplex, x: Representation) -> bool:
    return dbhom(P, x, 1).is_zero()


def in_torsion_free_class(P: TwoTermComplex, x: Representation) -> bool:
    return dbhom(P, x, 0).is_zero()


@dataclass
class TorsionPairReport:
    complex: TwoTermComplex
    catalog: IndecCatalog
    torsion: List[Representation]
    torsion_free: List[Representation]
    unassigned: List[Representation]

    @property
    def complete(self) -> bool:
        return self.catalog.complete

    @property
    def split(self) -> Optional[bool]:
        """False on any unassigned indecomposable; None when the catalog cannot rule one out"""
        if self.unassigned:
            return False
        return True if self.complete else None

    def names(self) -> Dict[str, List[str]]:
        return {"T": [m.label() for m in self.torsion], "F": [m.label() for m in self.torsion_free],
                "neither": [m.label() for m in self.unassigned]}

    def to_frame(self) -> pd.DataFrame:
        rows = [{"module": m.label(), "class": cls} for cls, mods in
                (("T", self.torsion), ("F", self.torsion_free), ("neither", self.unassigned)) for m in mods]
        return pd.DataFrame(rows, columns=["module", "class"])

    def to_dict(self) -> dict:
        out = self.names()
        out.update({"complex": self.complex.label(), "split": self.split, "catalog_complete": self.complete})
        return out


def torsion_pair(P: TwoTermComplex, catalog: IndecCatalog, allow_incomplete: bool = False) -> TorsionPairReport:
    """(T(P), F(P)) on the indecomposable catalog"""
    if not allow_incomplete:
        catalog.require_complete("Torsion pair")
    torsion, free, neither = [], [], []
    for m in catalog.modules:
        if in_torsion_class(P, m):
            torsion.append(m)
        elif in_torsion_free_class(P, m):
            free.append(m)
        else:
            neither.append(m)
    logger.debug(f"Torsion pair of {P.label()}: {len(torsion)} in T, {len(free)} in F, {len(neither)} in neither")
    return TorsionPairReport(P, catalog, torsion, free, neither)


def _in_add(x: Representation, parts: Sequence[Representation]) -> bool:
    return find_isomorphic(x, list(parts)) is not None


def _parts(m: Representation, seed: int = 0) -> List[Representation]:
    return decompose(m, seed) if m.dim else []


@dataclass
class InducedClasses:
    """X(P) and Y(P) in mod B; from_catalog marks classes read off a complete catalog of B"""
    x_class: List[Representation]
    y_class: List[Representation]
    from_catalog: bool


class SiltingAnalysis:
    """Everything derived from one silting complex, computed on first use"""

    def __init__(self, complex: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                 catalog_bound: int = DEFAULT_CATALOG_BOUND, bound: int = DEFAULT_BOUND):
        self.complex = complex
        self.algebra = complex.algebra
        self.seed = seed
        self.catalog_bound = catalog_bound
        self.bound = bound
        self._catalog = catalog
        self._images: Dict[Tuple[int, int], Tuple[Representation, Representation]] = {}

    def __repr__(self):
        return f"SiltingAnalysis({self.complex.label()})"

    @cached_property
    def catalog(self) -> IndecCatalog:
        if self._catalog is not None:
            return self._catalog
        return cached_catalog(self.algebra, self.catalog_bound, self.seed)

    @cached_property
    def summands(self) -> List[TwoTermComplex]:
        return basic_summands(self.complex, self.seed)

    @cached_property
    def basic(self) -> TwoTermComplex:
        return TwoTermComplex.sum_of(self.summands, name=self.complex.label())

    @cached_property
    def end(self):
        return complex_end_algebra(self.summands, name=f"End({self.complex.label()})")

    @cached_property
    def b_algebra(self) -> BoundQuiverAlgebra:
        return self.end.presentation(self.seed)[0]

    @cached_property
    def b_catalog(self) -> IndecCatalog:
        return cached_catalog(self.b_algebra, self.catalog_bound, self.seed)

    @cached_property
    def report(self) -> TorsionPairReport:
        return torsion_pair(self.complex, self.catalog, allow_incomplete=True)

    @cached_property
    def nakayama(self):
        return nakayama_complex(self.basic)

    @cached_property
    def h0_parts(self) -> List[Representation]:
        return _parts(self.complex.h0(), self.seed)

    @cached_property
    def nu_hm1_parts(self) -> List[Representation]:
        return _parts(self.nakayama.hm1, self.seed)

    @cached_property
    def induced(self):
        return induced_Q(self.complex, self.seed, end=self.end)

    def _module(self, x: Representation, shift: int, tag: str) -> Representation:
        spaces = [dbhom(c, x, shift) for c in self.summands]
        if shift == 0:
            def precompose(g, b):
                return g.compose(ModuleMap(b.source.p0, b.target.p0, b.m0))
        else:
            def precompose(g, b):
                return g.compose(ModuleMap(b.source.pm1, b.target.pm1, b.m1))
        rep, _ = action_module(self.end, spaces, precompose, x.p, name=f"{tag}({x.label()})", seed=self.seed)
        return rep

    def _image(self, x: Representation, shift: int) -> Representation:
        key = (id(x), shift)
        hit = self._images.get(key)
        if hit is not None and hit[0] is x:
            return hit[1]
        rep = self._module(x, shift, "H" if shift == 0 else "E")
        self._images[key] = (x, rep)
        return rep

    def H(self, x: Representation) -> Representation:
        """Hom(P, X) over B for X in T(P)"""
        if not in_torsion_class(self.complex, x):
            raise ValueError(f"{x.label()} is not in T({self.complex.label()})")
        return self._image(x, 0)

    def E(self, x: Representation) -> Representation:
        """Hom(P, Sigma X) over B for X in F(P)"""
        if not in_torsion_free_class(self.complex, x):
            raise ValueError(f"{x.label()} is not in F({self.complex.label()})")
        return self._image(x, 1)

    @cached_property
    def images(self) -> InducedClasses:
        """E(F(P)) and H(T(P)) under stack names over B"""
        xs = [renamed(self.E(m), stack_name(self.E(m))) for m in self.report.torsion_free]
        ys = [renamed(self.H(m), stack_name(self.H(m))) for m in self.report.torsion]
        return InducedClasses(xs, ys, from_catalog=False)

    @cached_property
    def classes(self) -> InducedClasses:
        """X(P) = T(Q) and Y(P) = F(Q), read off the catalog of B when it is complete"""
        if not self.b_catalog.complete or not self.report.complete:
            logger.warning(f"Catalog of {self.b_algebra.name or 'B'} is incomplete; "
                           f"X and Y of {self.complex.label()} are images of the known A-modules")
            return self.images
        q_report = torsion_pair(self.induced.q, self.b_catalog)
        return InducedClasses(q_report.torsion, q_report.torsion_free, from_catalog=True)


_analyses: "weakref.WeakKeyDictionary[TwoTermComplex, Dict[tuple, SiltingAnalysis]]" = weakref.WeakKeyDictionary()


def analysis(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
             catalog_bound: int = DEFAULT_CATALOG_BOUND, bound: int = DEFAULT_BOUND) -> SiltingAnalysis:
    key = (id(catalog) if catalog is not None else None, seed, catalog_bound, bound)
    per_complex = _analyses.setdefault(P, {})
    if key not in per_complex:
        per_complex[key] = SiltingAnalysis(P, catalog, seed, catalog_bound, bound)
    return per_complex[key]


def H_module(P: TwoTermComplex, x: Representation, seed: int = 0) -> Representation:
    return analysis(P, seed=seed).H(x)


def E_module(P: TwoTermComplex, x: Representation, seed: int = 0) -> Representation:
    return analysis(P, seed=seed).E(x)


def x_and_y_classes(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0) -> InducedClasses:
    return analysis(P, catalog, seed).classes


def is_separating(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0) -> bool:
    """Every indecomposable lies in T(P) or F(P)"""
    split = analysis(P, catalog, seed).report.split
    if split is None:
        raise IncompleteCatalogError(f"No indecomposable outside T and F among the known modules of "
                                     f"{P.algebra.name or 'the algebra'}, but the catalog is incomplete")
    return split


def _ext2_route(a: SiltingAnalysis) -> Optional[bool]:
    if a.algebra.is_hereditary():
        return True
    for x in a.report.torsion:
        for y in a.report.torsion_free:
            if ext_dim(x, y, 2):
                logger.debug(f"Ext^2({x.label()}, {y.label()}) is nonzero")
                return False
    return True if a.report.complete else None


def _catalog_route(a: SiltingAnalysis) -> Optional[bool]:
    if not a.report.complete:
        return None
    images = a.images.x_class + a.images.y_class
    for n in a.b_catalog.modules:
        if not _in_add(n, images):
            logger.debug(f"{n.label()} over B lies outside X and Y")
            return False
    return True if a.b_catalog.complete and a.report.complete else None


def splitting_routes(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                     seed: int = 0) -> Tuple[Optional[bool], Optional[bool]]:
    """(B-catalog route, Ext^2 route); None where a catalog is too small to decide"""
    a = analysis(P, catalog, seed)
    return _catalog_route(a), _ext2_route(a)


def is_splitting(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0) -> bool:
    """(X(P), Y(P)) splits in mod B, equivalently Ext^2(T(P), F(P)) = 0"""
    by_catalog, by_ext = splitting_routes(P, catalog, seed)
    if by_catalog is not None and by_ext is not None and by_catalog != by_ext:
        raise InternalCheckError(f"Splitting of {P.label()}: B-catalog says {by_catalog}, Ext^2 says {by_ext}")
    value = by_catalog if by_catalog is not None else by_ext
    if value is None:
        raise IncompleteCatalogError(f"Cannot decide splitting of {P.label()} on incomplete catalogs")
    return value


def check_id_restriction(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                         bound: int = DEFAULT_BOUND) -> Tuple[bool, List[Tuple[Representation, DimBound]]]:
    """id X <= 1 for every X in F(P), with the offenders"""
    a = analysis(P, catalog, seed)
    if a.algebra.is_hereditary():
        return True, []
    a.catalog.require_complete("id-restriction")
    offenders = [(x, d) for x, d in ((x, inj_dim(x, bound)) for x in a.report.torsion_free) if not d.at_most(1)]
    return not offenders, offenders


def check_pd_restriction(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                         bound: int = DEFAULT_BOUND) -> Tuple[bool, List[Tuple[Representation, DimBound]]]:
    """pd X <= 1 for every X in T(P), with the offenders"""
    a = analysis(P, catalog, seed)
    if a.algebra.is_hereditary():
        return True, []
    a.catalog.require_complete("pd-restriction")
    offenders = [(x, d) for x, d in ((x, proj_dim(x, bound)) for x in a.report.torsion) if not d.at_most(1)]
    return not offenders, offenders


def _offender_text(offenders) -> str:
    return ", ".join(f"{x.label()} ({d})" for x, d in offenders)


def _gate(P: TwoTermComplex, check: str, seed: int) -> Optional[CheckResult]:
    if not is_silting(P, seed):
        return inapplicable(check, f"{P.label()} is not silting")
    return None


def verify_separating_criterion(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                seed: int = 0) -> CheckResult:
    """Under the id-restriction: separating iff pd_B M <= 1 on X(P)"""
    check = "separating criterion"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    try:
        ok, offenders = check_id_restriction(P, catalog, seed)
        if not ok:
            return inapplicable(check, f"id-restriction fails at {_offender_text(offenders)}")
        separating = is_separating(P, catalog, seed)
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    a = analysis(P, catalog, seed)
    witnesses = [(m, proj_dim(m, a.bound)) for m in a.classes.x_class]
    large = [(m, d) for m, d in witnesses if not d.at_most(1)]
    agree = separating == (not large)
    detail = f"separating = {separating}; pd_B above 1 on X(P): {_offender_text(large) or 'none'}"
    return verdict_of(check, agree, detail, separating=separating,
                      witnesses={m.label(): d for m, d in large})


def verify_dual_separating_criterion(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                     seed: int = 0) -> CheckResult:
    """Under the pd-restriction: separating iff id_B N <= 1 on Y(P)"""
    check = "dual separating criterion"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    try:
        ok, offenders = check_pd_restriction(P, catalog, seed)
        if not ok:
            return inapplicable(check, f"pd-restriction fails at {_offender_text(offenders)}")
        separating = is_separating(P, catalog, seed)
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    a = analysis(P, catalog, seed)
    large = [(n, d) for n, d in ((n, inj_dim(n, a.bound)) for n in a.classes.y_class) if not d.at_most(1)]
    agree = separating == (not large)
    detail = f"separating = {separating}; id_B above 1 on Y(P): {_offender_text(large) or 'none'}"
    return verdict_of(check, agree, detail, separating=separating,
                      witnesses={n.label(): d for n, d in large})


def ext_projectives(mods: Sequence[Representation]) -> List[Representation]:
    return [x for x in mods if all(ext1_dim(x, y) == 0 for y in mods)]


def ext_injectives(mods: Sequence[Representation]) -> List[Representation]:
    return [y for y in mods if all(ext1_dim(x, y) == 0 for x in mods)]


def _same_classes(found: Sequence[Representation], expected: Sequence[Representation]) -> bool:
    return all(_in_add(x, expected) for x in found) and all(_in_add(y, found) for y in expected)


def verify_ext_projectives(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0) -> CheckResult:
    """Ext-projectives of T(P) are add H^0(P); Ext-injectives of F(P) are add H^-1(nu P)"""
    check = "Ext-projectives and Ext-injectives"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    if not a.report.complete:
        return inapplicable(check, "catalog is incomplete")
    projs = ext_projectives(a.report.torsion)
    injs = ext_injectives(a.report.torsion_free)
    ok_p = _same_classes(projs, a.h0_parts)
    ok_i = _same_classes(injs, a.nu_hm1_parts)
    detail = (f"Ext-projectives {[m.label() for m in projs]} vs H0 {[m.label() for m in a.h0_parts]}; "
              f"Ext-injectives {[m.label() for m in injs]} vs H-1(nu P) {[m.label() for m in a.nu_hm1_parts]}")
    return verdict_of(check, ok_p and ok_i, detail, projectives_match=ok_p, injectives_match=ok_i)


def verify_ar_middle_lemma(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                           seed: int = 0) -> CheckResult:
    """Middle terms of almost split sequences ending in summands of H^0(P) lie in add(H^0(P) + H^-1(nu P))"""
    check = "almost split middle terms"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    try:
        if not is_separating(P, catalog, seed):
            return inapplicable(check, f"{P.label()} is not separating")
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    a = analysis(P, catalog, seed)
    allowed = a.h0_parts + a.nu_hm1_parts
    bad, seen = [], []
    for y in a.h0_parts:
        if is_projective(y):
            continue
        seq = almost_split_sequence(y, seed)
        seen.append(y.label())
        bad += [f"{m.label()} in the sequence ending at {y.label()}" for m in seq.middle_summands
                if not _in_add(m, allowed)]
    if not seen:
        return verdict_of(check, True, "every summand of H0 is projective")
    return verdict_of(check, not bad, f"checked {seen}; outside: {bad or 'none'}", ends=seen)


def verify_hom_vanishing_lemmas(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                seed: int = 0) -> CheckResult:
    """Hom_B vanishing between E-images (and H-images under the pd-restriction)"""
    check = "Hom vanishing over B"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    if not a.report.complete:
        return inapplicable(check, "catalog is incomplete")
    id_ok, _ = check_id_restriction(P, catalog, seed)
    pd_ok, _ = check_pd_restriction(P, catalog, seed)
    separating = bool(a.report.split)
    free = a.report.torsion_free
    outside = [x for x in free if not _in_add(x, a.nu_hm1_parts)]
    bad, checked = [], []
    if id_ok:
        for i in (m for m in free if is_injective(m)):
            for x in outside:
                checked.append(f"E({i.label()}) -> E({x.label()})")
                if hom_dim(a.E(i), a.E(x)):
                    bad.append(checked[-1])
    if id_ok and separating:
        for z in a.h0_parts:
            if is_projective(z):
                continue
            tz = tau(z)
            if not in_torsion_free_class(P, tz):
                bad.append(f"tau {z.label()} is not in F")
                continue
            for x in outside:
                checked.append(f"E(tau {z.label()}) -> E({x.label()})")
                if hom_dim(a.E(tz), a.E(x)):
                    bad.append(checked[-1])
    if pd_ok and separating:
        target = a.H(P.h0())
        for x in a.report.torsion:
            if _in_add(x, a.h0_parts):
                continue
            checked.append(f"H({x.label()}) -> H(H0)")
            if hom_dim(a.H(x), target):
                bad.append(checked[-1])
    if not checked and not bad:
        return verdict_of(check, True, "no pair meets the hypotheses")
    return verdict_of(check, not bad, f"{len(checked)} Hom spaces checked; nonzero: {bad or 'none'}",
                      checked=len(checked), nonzero=bad)


def verify_projective_summand_lemma(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                    seed: int = 0) -> CheckResult:
    """dim B = dim Hom(P, H^0 P) + dim Hom(P, Sigma H^-1 P); H(H^0 P) projective when P is splitting"""
    check = "projective summand of B"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    q = a.basic
    top, low = dbhom(q, q.h0(), 0).dim, dbhom(q, q.hm1(), 1).dim
    sizes_ok = a.end.dim == top + low
    detail = f"dim B = {a.end.dim} = {top} + {low}" if sizes_ok else f"dim B = {a.end.dim} but {top} + {low}"
    try:
        splitting = is_splitting(P, catalog, seed)
    except IncompleteCatalogError:
        return verdict_of(check, sizes_ok, detail + "; splitting undecided")
    projective = None
    if splitting:
        projective = is_projective(a.H(P.h0()))
        detail += f"; H(H0) projective = {projective}"
    return verdict_of(check, sizes_ok and projective is not False, detail, splitting=splitting)


def verify_injective_summand_lemma(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                   seed: int = 0) -> CheckResult:
    """dim DB = dim Hom(P, Sigma H^-1 nu P) + dim Hom(P, H^0 nu P); E(H^-1 nu P) injective when P is splitting"""
    check = "injective summand of DB"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    nu = a.nakayama
    if not (in_torsion_class(P, nu.h0) and in_torsion_free_class(P, nu.hm1)):
        return inapplicable(check, "nu P is not in the heart")
    q = a.basic
    low, top = dbhom(q, nu.hm1, 1).dim, dbhom(q, nu.h0, 0).dim
    sizes_ok = a.end.dim == low + top
    detail = f"dim DB = {a.end.dim}, summands {low} + {top}"
    try:
        splitting = is_splitting(P, catalog, seed)
    except IncompleteCatalogError:
        return verdict_of(check, sizes_ok, detail + "; splitting undecided")
    injective = None
    if splitting:
        injective = is_injective(a.E(nu.hm1))
        detail += f"; E(H-1(nu P)) injective = {injective}"
    return verdict_of(check, sizes_ok and injective is not False, detail, splitting=splitting)


def verify_nakayama_in_heart(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                             seed: int = 0) -> CheckResult:
    check = "nu P in the heart"
    if not is_tilting(P, seed):
        return inapplicable(check, f"{P.label()} is not tilting")
    nu = nakayama_complex(P)
    top_ok = in_torsion_class(P, nu.h0)
    low_ok = in_torsion_free_class(P, nu.hm1)
    return verdict_of(check, top_ok and low_ok,
                      f"H0(nu P) = {nu.h0.label()} in T: {top_ok}; H-1(nu P) = {nu.hm1.label()} in F: {low_ok}")


def verify_endomorphism_pd_lemma(P: TwoTermComplex, generator: Optional[Sequence[Representation]] = None,
                                 catalog: Optional[IndecCatalog] = None, seed: int = 0) -> CheckResult:
    """pd over End_B(N) of Hom(N, H(U)) is at most pd over End_A(M) of Hom(M, U) for U in T(P).

    M defaults to the sum of the catalog and N = B + H(M_T) + E(M_F). The
    global dimension of End_B(N) equals that of its opposite, so both
    conventions give the same bound.
    """
    check = "pd over End of the generator"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    try:
        ok, offenders = check_id_restriction(P, catalog, seed)
        if not ok:
            return inapplicable(check, f"id-restriction fails at {_offender_text(offenders)}")
        if not is_separating(P, catalog, seed):
            return inapplicable(check, f"{P.label()} is not separating")
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    gens = basic_module_summands(generator if generator is not None else a.catalog.modules, seed)
    if not all(_in_add(x, gens) for v in a.algebra.vertices for x in _parts(projective_sum(a.algebra, [v]), seed)):
        return inapplicable(check, "M is not a generator")
    m_t = [m for m in gens if in_torsion_class(P, m)]
    m_f = [m for m in gens if not in_torsion_class(P, m)]
    regular = projective_sum(a.b_algebra, list(a.b_algebra.vertices))
    n_parts = basic_module_summands([regular] + [a.H(m) for m in m_t] + [a.E(m) for m in m_f], seed)
    end_m = endomorphism_algebra(gens, name="End(M)")
    end_n = endomorphism_algebra(n_parts, name="End(N)")
    bad = []
    for u in a.report.torsion:
        lhs = proj_dim(hom_functor_module(end_n, a.H(u), seed), a.bound)
        rhs = proj_dim(hom_functor_module(end_m, u, seed), a.bound)
        if rhs.exact and (not lhs.exact or lhs.value > rhs.value):
            bad.append(f"{u.label()}: {lhs} > {rhs}")
    return verdict_of(check, not bad, f"{len(a.report.torsion)} modules of T checked; violations: {bad or 'none'}",
                      convention="End_B(N) and End_B(N)^op have the same global dimension")


def verify_torsion_correspondence(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                                  seed: int = 0) -> CheckResult:
    """T(Q) = E(F(P)) and F(Q) = H(T(P)) over B"""
    check = "torsion pair of Q"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    if not a.report.complete or not a.b_catalog.complete:
        return inapplicable(check, "catalog of A or B is incomplete")
    classes, images = a.classes, a.images
    ok_x = _same_classes(classes.x_class, images.x_class)
    ok_y = _same_classes(classes.y_class, images.y_class)
    return verdict_of(check, ok_x and ok_y, f"T(Q) matches E(F): {ok_x}; F(Q) matches H(T): {ok_y}")


def verify_induced_separating(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                              seed: int = 0) -> CheckResult:
    """Q is separating and splitting over B when P is both"""
    check = "induced complex separating"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    a = analysis(P, catalog, seed)
    try:
        if not (is_separating(P, catalog, seed) and is_splitting(P, catalog, seed)):
            return inapplicable(check, f"{P.label()} is not both separating and splitting")
        q = a.induced.q
        sep = is_separating(q, a.b_catalog, seed)
        spl = is_splitting(q, a.b_catalog, seed)
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    return verdict_of(check, sep and spl, f"Q separating = {sep}, splitting = {spl}", separating=sep, splitting=spl)


def annihilator(m: Representation) -> np.ndarray:
    """Basis (columns) of the elements of A acting as zero on m"""
    alg = m.algebra
    cols = [m.action_matrix(linalg.identity(alg.dim)[:, b]).reshape(-1) for b in range(alg.dim)]
    if not m.dim:
        return linalg.identity(alg.dim)
    return linalg.kernel_basis(np.column_stack(cols), m.p)


def restrict_to_quotient(m: Representation, witness: QuotientWitness) -> Representation:
    """m as a module over A/I for I inside its annihilator"""
    quot = witness.algebra

    def operator(z):
        return m.action_matrix(witness.lift(z))

    rep = representation_from_action(quot, [quot.idempotent(v) for v in quot.vertices],
                                     {a: quot.arrow_element(a) for a in quot.quiver.arrows}, operator, m.p)
    return renamed(rep, stack_name(rep))


def is_tilting_module(t: Representation, seed: int = 0, bound: int = DEFAULT_BOUND) -> bool:
    """pd at most 1, no self-extensions, one summand per simple"""
    if not t.dim or not proj_dim(t, bound).at_most(1) or ext1_dim(t, t):
        return False
    return len(basic_module_summands([t], seed)) == len(t.algebra.vertices)


@dataclass
class TiltingFlags:
    module: Representation
    tilting: bool
    separating: Optional[bool]
    splitting: Optional[bool]
    torsion: List[Representation] = field(default_factory=list)
    torsion_free: List[Representation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"module": self.module.label(), "tilting": self.tilting, "separating": self.separating,
                "splitting": self.splitting, "T": [m.label() for m in self.torsion],
                "F": [m.label() for m in self.torsion_free]}


def tilting_flags(t: Representation, catalog: Optional[IndecCatalog] = None, seed: int = 0,
                  catalog_bound: int = DEFAULT_CATALOG_BOUND, bound: int = DEFAULT_BOUND) -> TiltingFlags:
    """Classical torsion pair of a tilting module and whether it splits on either side.

    Separating: every indecomposable lies in Fac T or in T-perp. Splitting:
    id Y <= 1 for every Y with Hom(T, Y) = 0.
    """
    if not is_tilting_module(t, seed, bound):
        return TiltingFlags(t, False, None, None)
    catalog = catalog if catalog is not None else cached_catalog(t.algebra, catalog_bound, seed)
    torsion = [x for x in catalog.modules if in_fac(t, x)]
    free = [x for x in catalog.modules if not hom_dim(t, x)]
    neither = len(catalog) - len(torsion) - len(free)
    separating = False if neither else (True if catalog.complete else None)
    splitting = all(inj_dim(y, bound).at_most(1) for y in free)
    if splitting and not catalog.complete:
        splitting = None
    return TiltingFlags(t, True, separating, splitting, torsion, free)


def quotient_by_annihilator(P: TwoTermComplex, seed: int = 0) -> Tuple[BoundQuiverAlgebra, QuotientWitness, Representation]:
    """A/ann H^0(P) and H^0(P) over it"""
    h0 = P.h0()
    ideal = annihilator(h0)
    quot, witness = quotient_algebra(P.algebra, ideal, seed)
    return quot, witness, restrict_to_quotient(h0, witness)


def verify_h0_tilting_over_quotient(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None, seed: int = 0) -> CheckResult:
    """H^0(P) is a separating and splitting tilting module over A/ann H^0(P)"""
    check = "H0 tilting over the quotient"
    gate = _gate(P, check, seed)
    if gate:
        return gate
    try:
        if not (is_separating(P, catalog, seed) and is_splitting(P, catalog, seed)):
            return inapplicable(check, f"{P.label()} is not both separating and splitting")
    except IncompleteCatalogError as exc:
        return inapplicable(check, str(exc))
    quot, _, t = quotient_by_annihilator(P, seed)
    flags = tilting_flags(t, seed=seed, catalog_bound=analysis(P, catalog, seed).catalog_bound)
    ok = flags.tilting and flags.separating is not False and flags.splitting is not False
    detail = (f"A/ann has dim {quot.dim}; H0 tilting = {flags.tilting}, separating = {flags.separating}, "
              f"splitting = {flags.splitting}")
    return verdict_of(check, ok, detail, quotient_dim=quot.dim)


def tilting_modules(alg: BoundQuiverAlgebra, catalog: IndecCatalog, seed: int = 0) -> List[Representation]:
    """Basic classical tilting modules, as H^0 of the silting complexes with no shifted projective and H^-1 = 0"""
    out = []
    for cx in enumerate_2term_silting(alg, catalog, seed):
        if cx.hm1().dim or any(not c.deg_0 for c in cx.parts or [cx]):
            continue
        t = cx.h0()
        t = renamed(t, " + ".join(c.h0().label() for c in cx.parts) if cx.parts else t.label())
        if not is_tilting_module(t, seed):
            raise InternalCheckError(f"H0 of {cx.label()} is not a tilting module")
        out.append(t)
    logger.info(f"{len(out)} tilting modules over {alg.name or 'algebra'}")
    return out


def run_silting_checks(P: TwoTermComplex, catalog: Optional[IndecCatalog] = None,
                       seed: int = 0) -> List[CheckResult]:
    """Every torsion-theoretic check on one complex; internal failures become failed results"""
    checks = [verify_separating_criterion, verify_dual_separating_criterion, verify_ext_projectives,
              verify_ar_middle_lemma, verify_hom_vanishing_lemmas, verify_projective_summand_lemma,
              verify_injective_summand_lemma, verify_nakayama_in_heart, verify_torsion_correspondence,
              verify_induced_separating, verify_h0_tilting_over_quotient]
    out = []
    for fn in checks:
        try:
            out.append(fn(P, catalog=catalog, seed=seed))
        except WorkbenchError as exc:
            logger.warning(f"{fn.__name__} on {P.label()} stopped: {exc}")
            out.append(verdict_of(fn.__name__.replace("verify_", "").replace("_", " "), False, str(exc)))
    return out

"""Radicals, idempotents and quiver presentations of abstract algebras."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra import linalg
from algebra.errors import (InternalCheckError, NonBasicAlgebraError, NonSplitAlgebraError,
                            NotAnIdealError)
from algebra.quiver import AbstractAlgebra, BoundQuiverAlgebra, Path, Quiver

logger = logging.getLogger(__name__)

RANDOM_TRIES = 64
LIFT_STEPS = 64


def _as_abstract(algebra):
    if isinstance(algebra, BoundQuiverAlgebra):
        return algebra.to_abstract()
    return algebra


def _power_mod(batch: np.ndarray, exponent: int, modulus: int) -> np.ndarray:
    """Batched integer matrix power modulo ``modulus``"""
    n = batch.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), batch.shape).copy()
    base = batch % modulus
    while exponent:
        if exponent & 1:
            result = np.matmul(result, base) % modulus
        exponent >>= 1
        if exponent:
            base = np.matmul(base, base) % modulus
    return result


def _trace_radical(a: AbstractAlgebra) -> np.ndarray:
    """Radical over GF(p) via the lifted trace forms g_i(x) = Tr(x^(p^i)) / p^i mod p"""
    p, n = a.p, a.dim
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    ideal = linalg.identity(n)
    for i in range(levels + 1):
        if ideal.shape[1] == 0:
            break
        modulus = p ** (i + 1)
        forms = linalg.zeros(n, ideal.shape[1])
        for j in range(ideal.shape[1]):
            prods = a.left_matrix(ideal[:, j])
            # left regular matrices of u_j * b_k for every basis element b_k
            mats = np.einsum("mk,mbc->kcb", prods, a.mult)
            traces = np.trace(_power_mod(mats, p ** i, modulus), axis1=1, axis2=2) % modulus
            forms[:, j] = (traces // (p ** i)) % p
        ker = linalg.kernel_basis(forms, p)
        ideal = linalg.column_space(linalg.mat_mul(ideal, ker, p), p)
    return ideal


def jacobson_radical(algebra) -> np.ndarray:
    """Basis (as columns) of the Jacobson radical"""
    if isinstance(algebra, BoundQuiverAlgebra):
        return algebra.radical_basis()
    return _trace_radical(algebra)


def radical_power_chain(a: AbstractAlgebra, radical: np.ndarray) -> List[np.ndarray]:
    """[J, J^2, ...] up to the first zero power (excluded)"""
    chain = []
    current = radical
    while current.shape[1]:
        chain.append(current)
        if len(chain) > a.dim + 1:
            raise InternalCheckError("Radical is not nilpotent")
        current = linalg.column_space(a.products(current, radical), a.p)
    return chain


def corner(a: AbstractAlgebra, e, f=None) -> np.ndarray:
    """Basis of e A f as columns"""
    f = e if f is None else f
    return linalg.column_space(linalg.mat_mul(a.left_matrix(e), a.right_matrix(f), a.p), a.p)


def _poly_roots(coeffs: List[int], p: int) -> List[int]:
    """Roots in GF(p) of sum coeffs[i] t^i"""
    roots = []
    for lam in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * lam + c) % p
        if acc == 0:
            roots.append(lam)
    return roots


def _minimal_polynomial(a: AbstractAlgebra, y, e, radical) -> List[int]:
    """Monic minimal polynomial of y in eAe modulo the radical, low degree first"""
    p = a.p
    powers = [e % p]
    while True:
        nxt = a.multiply(powers[-1], y)
        span = np.column_stack(powers + [radical[:, i] for i in range(radical.shape[1])])
        sol = linalg.solve(span, nxt, p)
        if sol is not None:
            k = len(powers)
            return [(-int(c)) % p for c in sol[:k]] + [1]
        powers.append(nxt)


def _evaluate(a: AbstractAlgebra, coeffs: List[int], y, e) -> np.ndarray:
    acc = (coeffs[-1] * e) % a.p
    for c in reversed(coeffs[:-1]):
        acc = (a.multiply(acc, y) + c * e) % a.p
    return acc


def lift_idempotent(a: AbstractAlgebra, x) -> np.ndarray:
    """Iterate x -> 3x^2 - 2x^3 until x is idempotent"""
    p = a.p
    x = linalg.mod_p(x, p)
    for _ in range(LIFT_STEPS):
        x2 = a.multiply(x, x)
        if np.array_equal(x2, x):
            return x
        x = (3 * x2 - 2 * a.multiply(x2, x)) % p
    raise InternalCheckError("Idempotent lifting did not converge")


def _idempotent_from(a: AbstractAlgebra, y, e, radical) -> Optional[np.ndarray]:
    p = a.p
    m = _minimal_polynomial(a, y, e, radical)
    if len(m) <= 2:
        return None
    for lam in _poly_roots(m, p):
        # synthetic division m = (t - lam) g
        g = [0] * (len(m) - 1)
        g[-1] = m[-1]
        for d in range(len(m) - 2, 0, -1):
            g[d - 1] = (m[d] + lam * g[d]) % p
        g_lam = 0
        for c in reversed(g):
            g_lam = (g_lam * lam + c) % p
        if g_lam == 0:
            continue
        f = _evaluate(a, g, y, e) * linalg.inv_scalar(g_lam, p) % p
        return lift_idempotent(a, f)
    return None


def split_idempotent(a: AbstractAlgebra, e, radical: np.ndarray, rng: np.random.Generator) -> Optional[np.ndarray]:
    """An idempotent f of eAe with f != 0, e modulo the radical, or None if e is primitive"""
    p = a.p
    c = corner(a, e)
    c_rad = linalg.intersect(c, radical, p)
    top = c.shape[1] - c_rad.shape[1]
    if top <= 1:
        return None
    candidates = [c[:, i] for i in range(c.shape[1])]
    for _ in range(RANDOM_TRIES):
        candidates.append(linalg.mat_mul(c, rng.integers(0, p, size=c.shape[1]), p))
    for y in candidates:
        if linalg.in_span(c_rad, (y - e) % p, p) or linalg.in_span(c_rad, y, p):
            continue
        f = _idempotent_from(a, y, e, c_rad)
        if f is not None:
            return f
    raise NonSplitAlgebraError(f"A corner with {top}-dimensional top has no split idempotent over GF({p})")


def primitive_idempotents(a: AbstractAlgebra, radical: np.ndarray, seed: int = 0) -> List[np.ndarray]:
    """Complete set of primitive orthogonal idempotents, in a deterministic order"""
    rng = np.random.default_rng(seed)
    stack = [a.unit.copy()]
    out = []
    while stack:
        e = stack.pop(0)
        f = split_idempotent(a, e, radical, rng)
        if f is None:
            out.append(e)
        else:
            stack[:0] = [f, (e - f) % a.p]
    return out


@dataclass
class QuiverWitness:
    """Isomorphism between a bound quiver presentation and the algebra it came from"""
    algebra: BoundQuiverAlgebra
    source: AbstractAlgebra
    to_source: np.ndarray
    idempotents: List[np.ndarray]
    labels: List[str]
    arrow_elements: Dict[str, np.ndarray] = field(default_factory=dict)
    morita_reduced: bool = False

    def map_element(self, z) -> np.ndarray:
        """Coordinates in the source algebra of an element of the presentation"""
        return linalg.mat_mul(self.to_source, np.asarray(z).reshape(-1, 1), self.source.p).reshape(-1)

    def pull_element(self, x) -> np.ndarray:
        sol = linalg.solve(self.to_source, x, self.source.p)
        if sol is None:
            raise ValueError("Element is outside the image of the presentation")
        return sol


def _corner_algebra(a: AbstractAlgebra, e) -> Tuple[AbstractAlgebra, np.ndarray]:
    """eAe as an abstract algebra together with its basis in A"""
    p = a.p
    basis = corner(a, e)
    prods = a.products(basis, basis)
    coords = linalg.solve(basis, prods, p)
    k = basis.shape[1]
    mult = coords.reshape(k, k, k).transpose(1, 2, 0)
    unit = linalg.solve(basis, e, p)
    return AbstractAlgebra(mult, unit, p, name=f"{a.name}_corner" if a.name else ""), basis


def quiverize(algebra, idempotents: Optional[Sequence] = None, labels: Optional[Sequence[str]] = None,
              radical: Optional[np.ndarray] = None, morita: bool = False, seed: int = 0,
              name: str = "") -> Tuple[BoundQuiverAlgebra, QuiverWitness]:
    """Present a split finite-dimensional algebra as kQ/I"""
    a = _as_abstract(algebra)
    p = a.p
    if radical is None:
        radical = jacobson_radical(algebra)
    if idempotents is None:
        idempotents = primitive_idempotents(a, radical, seed)
    idempotents = [linalg.mod_p(e, p) for e in idempotents]
    labels = [str(i + 1) for i in range(len(idempotents))] if labels is None else [str(v) for v in labels]

    classes: List[int] = []
    for i, e in enumerate(idempotents):
        rep = next((j for j in classes if not _inside(corner(a, idempotents[j], e), radical, p)), None)
        if rep is None:
            classes.append(i)
        elif not morita:
            raise NonBasicAlgebraError(f"Vertices {labels[rep]} and {labels[i]} have isomorphic projectives")
    embed = linalg.identity(a.dim)
    reduced = len(classes) < len(idempotents)
    if reduced:
        logger.info(f"Morita reduction keeps {len(classes)} of {len(idempotents)} idempotents")
        e = sum(idempotents[i] for i in classes) % p
        a_full = a
        a, embed = _corner_algebra(a_full, e)
        radical = linalg.column_space(linalg.solve(embed, linalg.intersect(embed, radical, p), p), p)
        idempotents = [linalg.solve(embed, idempotents[i], p) for i in classes]
        labels = [labels[i] for i in classes]

    chain = radical_power_chain(a, radical)
    loewy = len(chain) + 1
    rad2 = chain[1] if len(chain) > 1 else linalg.zeros(a.dim, 0)

    def block(space, i, j):
        if space.shape[1] == 0:
            return space
        proj = linalg.mat_mul(a.left_matrix(idempotents[i]), a.right_matrix(idempotents[j]), p)
        return linalg.column_space(linalg.mat_mul(proj, space, p), p)

    arrows: List[Tuple[str, str, str]] = []
    arrow_elements: Dict[str, np.ndarray] = {}
    for i in range(len(idempotents)):
        for j in range(len(idempotents)):
            rad_ij = block(radical, i, j)
            if rad_ij.shape[1] == 0:
                continue
            rad2_ij = block(rad2, i, j)
            for col in linalg.extend_columns(rad2_ij, rad_ij, p):
                arrow = f"a{len(arrows) + 1}"
                arrows.append((arrow, labels[i], labels[j]))
                arrow_elements[arrow] = rad_ij[:, col]
    quiver = Quiver(labels, arrows)

    paths = quiver.paths(loewy)
    vertex_elem = dict(zip(labels, idempotents))
    images: Dict[Path, np.ndarray] = {}
    for q in paths:
        if q.length == 0:
            images[q] = vertex_elem[q.source]
        else:
            prefix = Path(q.source, quiver.arrows[q.arrows[-1]][0], q.arrows[:-1])
            images[q] = a.multiply(images[prefix], arrow_elements[q.arrows[-1]])

    relations = _minimal_relations(quiver, paths, images, p)
    presented = BoundQuiverAlgebra(quiver, relations, p, name=name or (f"{a.name}_quiver" if a.name else ""))
    if presented.dim != a.dim:
        raise InternalCheckError(f"Presentation has dimension {presented.dim}, expected {a.dim}")
    to_source = np.column_stack([images[q] for q in presented.basis]) % p
    if not linalg.is_invertible(to_source, p):
        raise InternalCheckError("Presentation map is not an isomorphism")
    source = _as_abstract(algebra)
    if reduced:
        to_source = linalg.mat_mul(embed, to_source, p)
        idempotents = [linalg.mat_mul(embed, e.reshape(-1, 1), p).reshape(-1) for e in idempotents]
        arrow_elements = {k: linalg.mat_mul(embed, v.reshape(-1, 1), p).reshape(-1) for k, v in arrow_elements.items()}
    witness = QuiverWitness(presented, source, to_source, idempotents, labels, arrow_elements, reduced)
    logger.info(f"Quiverized algebra of dimension {a.dim}: {len(labels)} vertices, {len(arrows)} arrows, "
                f"{len(relations)} relations")
    return presented, witness


def _inside(space: np.ndarray, radical: np.ndarray, p: int) -> bool:
    if space.shape[1] == 0:
        return True
    return linalg.rank(np.concatenate([radical, space], axis=1), p) == linalg.rank(radical, p) \
        if radical.shape[1] else not space.any()


def _minimal_relations(quiver: Quiver, paths: List[Path], images: Dict[Path, np.ndarray], p: int):
    """Minimal generators of the kernel of kQ -> A, block by block"""
    by_block: Dict[Tuple[str, str], List[Path]] = {}
    for q in paths:
        by_block.setdefault((q.source, q.target), []).append(q)
    kernels: Dict[Tuple[str, str], np.ndarray] = {}
    for key, qs in by_block.items():
        phi = np.column_stack([images[q] for q in qs])
        kernels[key] = linalg.kernel_basis(phi, p)

    relations = []
    for key, qs in by_block.items():
        ker = kernels[key]
        if ker.shape[1] == 0:
            continue
        col = {q: i for i, q in enumerate(qs)}
        s, t = key
        generated = []
        # R*K + K*R inside this block
        for a, (a_s, a_t) in quiver.arrows.items():
            if a_s == s and (a_t, t) in kernels:
                for k in range(kernels[(a_t, t)].shape[1]):
                    generated.append(_shift(by_block[(a_t, t)], kernels[(a_t, t)][:, k], (a,), (), col, len(qs)))
            if a_t == t and (s, a_s) in kernels:
                for k in range(kernels[(s, a_s)].shape[1]):
                    generated.append(_shift(by_block[(s, a_s)], kernels[(s, a_s)][:, k], (), (a,), col, len(qs)))
        span = np.column_stack(generated) % p if generated else linalg.zeros(len(qs), 0)
        for c in linalg.extend_columns(span, ker, p):
            vec = ker[:, c]
            relations.append([(int(vec[i]), qs[i]) for i in range(len(qs)) if vec[i]])
    return relations


def _shift(qs: List[Path], vec: np.ndarray, before, after, col: Dict[Path, int], size: int) -> np.ndarray:
    """Multiply a kernel vector by an arrow, dropping paths past the Loewy length"""
    by_word = {r.arrows: c for r, c in col.items()}
    out = np.zeros(size, dtype=np.int64)
    for i, q in enumerate(qs):
        c = by_word.get(before + q.arrows + after)
        if vec[i] and c is not None:
            out[c] += vec[i]
    return out


def is_ideal(a: AbstractAlgebra, ideal: np.ndarray) -> bool:
    p = a.p
    if ideal.shape[1] == 0:
        return True
    every = linalg.identity(a.dim)
    prods = np.concatenate([a.products(ideal, every), a.products(every, ideal)], axis=1)
    return linalg.rank(np.concatenate([ideal, prods], axis=1), p) == linalg.rank(ideal, p)


@dataclass
class QuotientWitness:
    """Presentation of A/I together with a lift of its elements to A"""
    algebra: BoundQuiverAlgebra
    parent: BoundQuiverAlgebra
    ideal: np.ndarray
    to_parent: np.ndarray
    presentation: QuiverWitness

    def lift(self, z) -> np.ndarray:
        return linalg.mat_mul(self.to_parent, np.asarray(z).reshape(-1, 1), self.parent.p).reshape(-1)


def quotient_algebra(algebra: BoundQuiverAlgebra, ideal: np.ndarray, seed: int = 0) -> Tuple[BoundQuiverAlgebra, QuotientWitness]:
    """A/I re-presented by a quiver with relations"""
    a = _as_abstract(algebra)
    p = a.p
    ideal = linalg.column_space(linalg.mod_p(ideal, p).reshape(a.dim, -1), p)
    if not is_ideal(a, ideal):
        raise NotAnIdealError("Subspace is not a two-sided ideal")
    comp = linalg.complement_columns(ideal, a.dim, p)
    k = comp.shape[1]
    proj = linalg.inverse(np.concatenate([comp, ideal], axis=1), p)[:k]
    mult = linalg.mat_mul(proj, a.products(comp, comp), p).reshape(k, k, k).transpose(1, 2, 0)
    unit = linalg.mat_mul(proj, a.unit.reshape(-1, 1), p).reshape(-1)
    quotient = AbstractAlgebra(mult, unit, p, name=f"{a.name}/I" if a.name else "")
    rad = linalg.column_space(linalg.mat_mul(proj, np.concatenate([algebra.radical_basis(), ideal], axis=1), p), p) \
        if isinstance(algebra, BoundQuiverAlgebra) else None
    presented, witness = quiverize(quotient, radical=rad, seed=seed, name=quotient.name)
    to_parent = linalg.mat_mul(comp, witness.to_source, p)
    return presented, QuotientWitness(presented, algebra, ideal, to_parent, witness)

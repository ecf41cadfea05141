"""
ordercx.py

Order complexes of q-complexes and the counting side of their homology.

Vertices of K(Δ) are the faces of Δ (without the zero subspace when punctured),
numbered by (dim, ≺_q). Facets are the maximal chains, stored as sorted tuples
of vertex ids.

Counting operations work on punctured maximal chains U_1 ⊂ ... ⊂ U_r. Where a
criterion talks about U_0 the zero subspace is put back in front.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Set, Tuple

from qshell import GLOBALS as g
from qshell.errors import BadIndex, NotPrefix, NotPure, TooLarge
from qshell.qcomplex import QComplex, all_faces, punctured_faces
from qshell.qorder import Chain, complete_chains, min_q, no_interior_min, sort_l, sort_q
from qshell.vecspace import (
    Row,
    Subspace,
    contains,
    contains_vec,
    enumerate_between,
    gaussian_binomial,
    intersect,
    min_vector_of_difference,
    subspace,
    vector_key,
    zero_subspace,
)

logger = logging.getLogger(__name__)

Order = Optional[Tuple[int, ...]]


########################################################
# ABSTRACT SIMPLICIAL COMPLEXES
########################################################
@dataclass(frozen=True)
class SimplicialComplex:
    """
    vertices[i] is the label of vertex id i. Each facet is a sorted tuple of
    vertex ids and no facet contains another. The facet () alone is the
    complex {∅}, whose only face is the empty simplex.
    """
    vertices: Tuple[Hashable, ...]
    facets: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def labels(self, facet: Sequence[int]) -> Tuple[Hashable, ...]:
        return tuple(self.vertices[i] for i in facet)

    def __str__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertices)}, facets={len(self.facets)}, dim={self.dim})"

    @classmethod
    def from_facets(cls, facets: Sequence[Sequence[Hashable]], vertices: Optional[Sequence[Hashable]] = None) -> "SimplicialComplex":
        """
        Builds a complex from facets given as label collections. Vertex ids follow
        'vertices' when supplied, otherwise first appearance. Dominated and repeated
        facets are dropped. No facets at all gives {∅}.
        """
        if vertices is None:
            seen: Dict[Hashable, int] = {}
            for f in facets:
                for v in f:
                    seen.setdefault(v, len(seen))
            vertex_list = list(seen)
        else:
            vertex_list = list(vertices)
        ids = {v: i for i, v in enumerate(vertex_list)}

        unique = list(dict.fromkeys(frozenset(ids[v] for v in f) for f in facets))
        sizes = sorted({len(s) for s in unique})
        covered: Set[FrozenSet[int]] = set()
        maximal: Set[FrozenSet[int]] = set()
        for s in sorted(unique, key=len, reverse=True):
            if s in covered:
                continue
            maximal.add(s)
            for size in (k for k in sizes if k < len(s)):
                covered.update(frozenset(c) for c in itertools.combinations(sorted(s), size))
        kept = [s for s in unique if s in maximal] or [frozenset()]
        return cls(tuple(vertex_list), tuple(tuple(sorted(s)) for s in kept))


@dataclass
class SimplicialShellingResult:
    ok: bool
    facet_count: int
    violation: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "facets": self.facet_count,
            "violation": list(self.violation) if self.violation else None,
        }


def is_simplicial_shelling(sc: SimplicialComplex, order: Optional[Sequence[Tuple[int, ...]]] = None) -> SimplicialShellingResult:
    """
    Classical shelling test on facets G_1, ..., G_t: for every i < j some l < j
    has G_i ∩ G_j ⊆ G_l ∩ G_j with |G_l ∩ G_j| = |G_j| - 1.

    Equivalently G_j minus G_i must meet the set of vertices v for which
    G_j minus {v} lies in an earlier facet.
    """
    if not sc.is_pure:
        raise NotPure("simplicial shellings are only checked on pure complexes")
    facets = [frozenset(f) for f in (order if order is not None else sc.facets)]
    if len(facets) != len(sc.facets) or set(facets) != {frozenset(f) for f in sc.facets}:
        raise BadIndex("order must be a permutation of the complex's facets")

    for j in range(1, len(facets)):
        gj = facets[j]
        free = set()
        for gl in facets[:j]:
            missing = gj - gl
            if len(missing) == 1:
                free |= missing
        for i in range(j):
            if not (gj - facets[i]) & free:
                logger.info("Simplicial shelling fails at pair (%d, %d)", i + 1, j + 1)
                return SimplicialShellingResult(False, len(facets), (i + 1, j + 1))
    return SimplicialShellingResult(True, len(facets))


########################################################
# ORDER COMPLEXES
########################################################
def flag_count(dim: int, q: int) -> int:
    """Number of complete flags in a dim-dimensional space over F_q."""
    total = 1
    for i in range(1, dim + 1):
        total *= gaussian_binomial(i, 1, q)
    return total


def _guard_chains(c: QComplex) -> None:
    total = sum(flag_count(f.dim, c.q) * (f.dim + 1) for f in c.facets)
    if total > g.MAX_SIMPLICES:
        logger.warning("Order complex would need about %d vertex slots (limit %d)", total, g.MAX_SIMPLICES)
        raise TooLarge(f"order complex too large ({total} > {g.MAX_SIMPLICES}); raise limits.max_simplices")


def _sorted_faces(c: QComplex, punctured: bool, order: Order = None) -> List[Subspace]:
    pool = punctured_faces(c) if punctured else all_faces(c)
    by_dim: Dict[int, List[Subspace]] = {}
    for u in pool:
        by_dim.setdefault(u.dim, []).append(u)
    out: List[Subspace] = []
    for d in sorted(by_dim):
        out.extend(sort_q(by_dim[d], order))
    return out


def _flags(c: QComplex, punctured: bool) -> List[Chain]:
    zero = zero_subspace(c.field, c.n)
    out: List[Chain] = []
    for f in c.facets:
        for chain in complete_chains(zero, f):
            spaces = chain.spaces[1:] if punctured else chain.spaces
            if spaces:
                out.append(Chain(spaces))
    return out


def order_complex(c: QComplex, punctured: bool = True, order: Order = None) -> SimplicialComplex:
    """K(Δ), or K(Δ̊) when punctured: faces as vertices, maximal chains as facets."""
    _guard_chains(c)
    vertices = _sorted_faces(c, punctured, order)
    chains = _flags(c, punctured)
    sc = SimplicialComplex.from_facets([ch.spaces for ch in chains], vertices)
    logger.info("Order complex%s: %d vertices, %d maximal chains",
                " (punctured)" if punctured else "", len(sc.vertices), len(chains))
    return sc


def chain_ids(sc: SimplicialComplex, chain: Chain) -> Tuple[int, ...]:
    ids = {v: i for i, v in enumerate(sc.vertices)}
    return tuple(sorted(ids[u] for u in chain))


def _require_pure(c: QComplex) -> None:
    if not c.is_pure:
        raise NotPure(f"facet dimensions {sorted({f.dim for f in c.facets})} are not all equal")


def maximal_chains_sorted(c: QComplex, order: Order = None) -> List[Chain]:
    """Punctured maximal chains of K(Δ̊), sorted under ⪯_l."""
    _require_pure(c)
    _guard_chains(c)
    chains = sort_l(_flags(c, punctured=True), order)
    logger.debug("Sorted %d maximal chains", len(chains))
    return chains


########################################################
# RESTRICTIONS
########################################################
@dataclass
class RestrictionSet:
    index: int
    chain: Chain
    members: Tuple[Subspace, ...] = dc_field(default_factory=tuple)

    @property
    def is_full(self) -> bool:
        return len(self.members) == len(self.chain)


def restriction_face_ok(face: FrozenSet[Subspace], earlier: Sequence[FrozenSet[Subspace]]) -> bool:
    """True iff face lies in the complex generated by the earlier chains."""
    return any(face <= other for other in earlier)


def restriction(j: int, chains: Sequence[Chain]) -> RestrictionSet:
    """ℛ(𝔘_j) for 1-based j: the x in 𝔘_j with 𝔘_j minus {x} inside an earlier chain."""
    if not 1 <= j <= len(chains):
        raise BadIndex(f"chain index {j} outside 1..{len(chains)}")
    chain = chains[j - 1]
    earlier = [frozenset(ch.spaces) for ch in chains[: j - 1]]
    full = frozenset(chain.spaces)
    members = tuple(x for x in chain.spaces if restriction_face_ok(full - {x}, earlier))
    return RestrictionSet(j, chain, members)


def count_homology_facets_oracle(c: QComplex, order: Order = None) -> int:
    """Number of maximal chains whose restriction is the whole chain, straight from the definition."""
    chains = maximal_chains_sorted(c, order)
    count = sum(1 for j in range(1, len(chains) + 1) if restriction(j, chains).is_full)
    logger.info("Restriction oracle: %d of %d chains are homology facets", count, len(chains))
    return count


def count_homology_facets_characterized(c: QComplex, order: Order = None) -> int:
    """
    Counts chains 0 ⊂ U_1 ⊂ ... ⊂ U_r = F_j where U_{r-1} lies in an earlier facet
    and no interior U_k contains the minimum nonzero vector of U_{k+1}.
    """
    _require_pure(c)
    _guard_chains(c)
    facets = sort_q(c.facets, order)
    zero = zero_subspace(c.field, c.n)
    method = "vector" if order is None else "greedy"
    total = 0
    for j, fj in enumerate(facets):
        if j == 0:
            continue
        for chain in complete_chains(zero, fj):
            below = chain[len(chain) - 2]
            if not any(contains(fi, below) for fi in facets[:j]):
                continue
            if no_interior_min(chain, method, order):
                total += 1
    logger.info("Characterized count: %d homology facets", total)
    return total


########################################################
# BETTI FORMULA
########################################################
def interior_factor(k: int, q: int) -> int:
    """q^{(k-1)(k-2)/2}: chains below a fixed (F_j, U_{k-1}) with no interior minimum."""
    return q ** ((k - 1) * (k - 2) // 2)


def interior_slot_count(facet: Subspace, u_top: Subspace) -> int:
    """
    Enumerates the complete chains 0 ⊂ ... ⊂ u_top in which no interior space
    contains the minimum nonzero vector of the next one. u_top must be a
    hyperplane of facet. Equals interior_factor(dim facet, q).
    """
    if u_top.dim != facet.dim - 1 or not contains(facet, u_top):
        raise BadIndex(f"{u_top} is not a hyperplane of {facet}")
    zero = zero_subspace(facet.field, facet.n)
    return sum(1 for ch in complete_chains(zero, u_top) if no_interior_min(ch, "vector"))


def uniform_formula(q: int, k: int, n: int) -> int:
    """Top Betti number of K(Δ̊_q(k, n)): q^{k(k+1)/2} [n-1, k]_q."""
    return q ** (k * (k + 1) // 2) * gaussian_binomial(n - 1, k, q)


def sphere_formula(q: int, r: int) -> int:
    """Top Betti number of K(S̊_q^r): q^{r(r+1)/2}."""
    return q ** (r * (r + 1) // 2)


@dataclass
class BettiReport:
    t: int
    s: int
    k: int
    x: Row
    per_facet: List[Dict] = dc_field(default_factory=list)
    interior_factor: int = 1
    betti_rank: int = 0

    @property
    def degree(self) -> int:
        return self.k - 1

    @property
    def r_sum(self) -> int:
        return sum(p["r_j"] for p in self.per_facet)

    def to_dict(self) -> Dict:
        return {
            "t": self.t,
            "s": self.s,
            "x": list(self.x),
            "per_facet": self.per_facet,
            "interior_factor": self.interior_factor,
            "betti_rank": self.betti_rank,
        }


def betti_formula(c: QComplex, order: Order = None) -> BettiReport:
    """
    Rank of H̃_{k-1}(K(Δ̊)) for a lexicographically shellable Δ of dimension k:
    q^{(k-1)(k-2)/2} times the sum over facets F_j not containing the global
    minimum nonzero vector x of r_j, the number of distinct (k-1)-dimensional
    F_i ∩ F_j (i < j) avoiding the minimum nonzero vector of F_j.
    """
    _require_pure(c)
    facets = sort_q(c.facets, order)
    k = c.dim
    zero = zero_subspace(c.field, c.n)

    minima = [min_vector_of_difference(f, zero, order) for f in facets]
    x = min(minima, key=lambda v: vector_key(v, order))
    holding = [contains_vec(f, x) for f in facets]
    s = sum(holding)
    if not all(holding[:s]):
        raise NotPrefix(f"facets containing {x} are not the first {s} in ≺_q order")

    report = BettiReport(t=len(facets), s=s, k=k, x=x, interior_factor=interior_factor(k, c.q))
    for j in range(s, len(facets)):
        fj, xj = facets[j], minima[j]
        meets = {intersect(fi, fj) for fi in facets[:j]}
        r_j = sum(1 for m in meets if m.dim == k - 1 and not contains_vec(m, xj))
        report.per_facet.append({"j": j + 1, "x_j": list(xj), "r_j": r_j})

    report.betti_rank = report.interior_factor * report.r_sum
    logger.info("Betti formula: t=%d s=%d Σr_j=%d rank=%d", report.t, s, report.r_sum, report.betti_rank)
    return report


########################################################
# NON-MATROID WITNESS
########################################################
@dataclass
class NonMatroidWitness:
    vertices: Tuple[Subspace, ...]
    chains: List[Tuple[Subspace, ...]]

    @property
    def lengths(self) -> List[int]:
        return sorted((len(ch) for ch in self.chains), reverse=True)

    def to_dict(self) -> Dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "chains": [[str(u) for u in ch] for ch in self.chains],
            "lengths": self.lengths,
        }


def _maximal_chains_of(spaces: Sequence[Subspace]) -> List[Tuple[Subspace, ...]]:
    """Maximal chains of a small family of subspaces ordered by inclusion."""
    ordered = sorted(spaces, key=lambda u: u.dim)

    def extend(prefix: Tuple[Subspace, ...]) -> List[Tuple[Subspace, ...]]:
        top = prefix[-1]
        ups = [u for u in ordered if u.dim > top.dim and contains(u, top)]
        if not ups:
            return [prefix]
        out = []
        for u in ups:
            out.extend(extend(prefix + (u,)))
        return out

    chains = []
    for u in ordered:
        if not any(v.dim < u.dim and contains(u, v) for v in ordered):
            chains.extend(extend((u,)))
    return [ch for ch in chains if not any(set(ch) < set(other) for other in chains)]


def non_matroid_witness(c: QComplex, order: Order = None) -> Optional[NonMatroidWitness]:
    """
    For dim Δ >= 2 with at least two facets: the vertex set {0, <x_1>, <x_2>, F}
    on which K(Δ) restricts to a non-pure complex. F_1, F_2 are the first two
    facets under ≺_q, x_1 = min(F_1 minus F_2), x_2 = min(F_2 minus F_1), and F
    is the ≺_q-least plane of F_1 through x_1.
    """
    if c.dim < 2 or len(c.facets) < 2:
        return None
    f1, f2 = sort_q(c.facets, order)[:2]
    x1 = min_vector_of_difference(f1, f2, order)
    x2 = min_vector_of_difference(f2, f1, order)
    line1 = subspace(c.field, c.n, [x1])
    line2 = subspace(c.field, c.n, [x2])
    plane = min_q(enumerate_between(line1, f1, 2), order)
    verts = (zero_subspace(c.field, c.n), line1, line2, plane)
    witness = NonMatroidWitness(verts, _maximal_chains_of(verts))
    logger.info("Non-matroid witness with chain lengths %s", witness.lengths)
    return witness

"""
qcomplex.py

q-complexes: a collection of F_q-subspaces of F_q^n closed under taking
subspaces, presented by its facets (the maximal faces).

Contains:
- QComplex and its constructors: from_facets, uniform, q_sphere, subcomplex
- face queries: faces, all_faces, punctured_faces, contains_face, f_vector
- the two shellability checkers: is_shelling (any facet order) and
  is_lex_shellable (facets sorted under ≺_q)
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from qshell.errors import AmbientMismatch, BadDimension, BadIndex, Empty, NotPure
from qshell.gf import FieldSpec, format_field_spec
from qshell.qorder import sort_q
from qshell.vecspace import (
    Subspace,
    contains,
    enumerate_grassmannian,
    enumerate_subspaces_of,
    format_facets_file,
    intersect,
    read_facets_file,
    zero_subspace,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QComplex:
    field: FieldSpec
    n: int
    facets: Tuple[Subspace, ...]

    @property
    def dim(self) -> int:
        return max(f.dim for f in self.facets)

    @property
    def is_pure(self) -> bool:
        return len({f.dim for f in self.facets}) == 1

    @property
    def q(self) -> int:
        return self.field.q

    def __str__(self) -> str:
        return (
            f"QComplex(q={format_field_spec(self.field)}, n={self.n}, dim={self.dim}, "
            f"facets={len(self.facets)}, pure={self.is_pure})"
        )


########################################################
# CONSTRUCTORS
########################################################
def from_facets(spec: FieldSpec, n: int, facets: Sequence[Subspace]) -> QComplex:
    """
    Builds a QComplex from a facet list: duplicates are dropped (first
    occurrence wins) and any facet contained in another is removed. The
    surviving facets keep their input order.
    """
    if not facets:
        raise Empty("a q-complex needs at least one facet")
    for f in facets:
        if f.field != spec or f.n != n:
            raise AmbientMismatch(f"facet {f} does not live in F^{n} over {format_field_spec(spec)}")

    unique: List[Subspace] = []
    seen = set()
    for f in facets:
        if f not in seen:
            seen.add(f)
            unique.append(f)

    kept = [
        f for f in unique
        if not any(other.dim > f.dim and contains(other, f) for other in unique)
    ]
    dropped = len(unique) - len(kept)
    if dropped:
        logger.info("Removed %d dominated facet(s)", dropped)

    c = QComplex(spec, n, tuple(kept))
    logger.debug("Built %s", c)
    return c


def uniform(spec: FieldSpec, n: int, k: int) -> QComplex:
    """Δ_q(k, n): every k-dimensional subspace of F_q^n is a facet."""
    if not 0 < k <= n:
        raise BadDimension(f"uniform complex needs 0 < k <= n, got k={k}, n={n}")
    return from_facets(spec, n, enumerate_grassmannian(spec, n, k))


def q_sphere(top: Subspace) -> QComplex:
    """S_q^r: every codimension-1 subspace of the (r+1)-dimensional space top."""
    if top.dim < 1:
        raise BadDimension("a q-sphere needs a top space of dimension >= 1")
    return from_facets(top.field, top.n, enumerate_subspaces_of(top, top.dim - 1))


def subcomplex(c: QComplex, facets: Sequence[Subspace]) -> QComplex:
    """<F_1, ..., F_j>: the q-complex generated by some facets of c."""
    return from_facets(c.field, c.n, list(facets))


def read_complex(path: str) -> QComplex:
    spec, n, facets = read_facets_file(path)
    return from_facets(spec, n, facets)


def format_complex(c: QComplex, facets: Optional[Sequence[Subspace]] = None) -> str:
    return format_facets_file(c.field, c.n, facets if facets is not None else c.facets)


########################################################
# FACES
########################################################
def faces(c: QComplex, k: int) -> List[Subspace]:
    """All k-dimensional faces: k-subspaces contained in some facet, each once."""
    if not 0 <= k <= c.dim:
        raise BadDimension(f"k = {k} outside 0..{c.dim}")
    if k == 0:
        return [zero_subspace(c.field, c.n)]
    out: List[Subspace] = []
    seen = set()
    for f in c.facets:
        if f.dim < k:
            continue
        for u in enumerate_subspaces_of(f, k):
            if u not in seen:
                seen.add(u)
                out.append(u)
    return out


def all_faces(c: QComplex) -> List[Subspace]:
    out: List[Subspace] = []
    for k in range(c.dim + 1):
        out.extend(faces(c, k))
    return out


def punctured_faces(c: QComplex) -> List[Subspace]:
    """Faces of Δ̊, i.e. everything but the zero subspace."""
    out: List[Subspace] = []
    for k in range(1, c.dim + 1):
        out.extend(faces(c, k))
    return out


def contains_face(c: QComplex, u: Subspace) -> bool:
    return any(contains(f, u) for f in c.facets)


def f_vector(c: QComplex) -> List[int]:
    """Number of faces in each dimension 0..dim."""
    return [len(faces(c, k)) for k in range(c.dim + 1)]


########################################################
# SHELLINGS
########################################################
@dataclass
class ShellingCertificate:
    """
    Result of a shelling check. Indices are 1-based positions in 'order'.
    witnesses holds one (i, j, k) per pair i < j, k the smallest witness.
    On failure 'violation' is the first (i, j) with no witness.
    """
    ok: bool
    order: List[Subspace]
    dim: int
    pure: bool = True
    witnesses: List[Tuple[int, int, int]] = dc_field(default_factory=list)
    violation: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict:
        return {
            "order": [[list(r) for r in f.rows] for f in self.order],
            "witnesses": [{"i": i, "j": j, "k": k} for i, j, k in self.witnesses],
            "pure": self.pure,
            "dim": self.dim,
            "ok": self.ok,
            "violation": list(self.violation) if self.violation else None,
        }


def _require_pure(c: QComplex) -> None:
    if not c.is_pure:
        dims = sorted({f.dim for f in c.facets})
        raise NotPure(f"shellability is only defined for pure q-complexes; facet dimensions {dims}")


def is_shelling(c: QComplex, order: Optional[Sequence[Subspace]] = None) -> ShellingCertificate:
    """
    Checks whether the facets in 'order' form a shelling: for every i < j there
    is a k < j with F_i ∩ F_j ⊆ F_k ∩ F_j and dim F_k ∩ F_j = r - 1.
    """
    _require_pure(c)
    facets = list(order) if order is not None else list(c.facets)
    if len(facets) != len(c.facets) or set(facets) != set(c.facets):
        raise BadIndex("order must be a permutation of the complex's facets")
    r = c.dim
    cert = ShellingCertificate(ok=True, order=facets, dim=r)

    for j in range(1, len(facets)):
        fj = facets[j]
        meets = [intersect(facets[i], fj) for i in range(j)]
        codim1 = [k for k in range(j) if meets[k].dim == r - 1]
        for i in range(j):
            witness = next((k for k in codim1 if contains(meets[k], meets[i])), None)
            if witness is None:
                cert.ok = False
                cert.violation = (i + 1, j + 1)
                logger.info("Shelling check failed at pair (%d, %d)", i + 1, j + 1)
                return cert
            cert.witnesses.append((i + 1, j + 1, witness + 1))

    logger.debug("Shelling check passed for %d facets", len(facets))
    return cert


def is_lex_shellable(c: QComplex, order: Optional[Tuple[int, ...]] = None) -> ShellingCertificate:
    """Sorts the facets under ≺_q and runs is_shelling on that order."""
    _require_pure(c)
    return is_shelling(c, sort_q(c.facets, order))

"""
homology.py

Reduced integral homology of finite simplicial complexes.

Simplices are sorted vertex-id tuples; the boundary of (v_0, ..., v_p) is
Σ (-1)^i (v_0, ..., v̂_i, ..., v_p). In reduced mode the empty simplex () sits
in degree -1 and every vertex maps onto it with coefficient +1.

Ranks and torsion come from an exact sparse Smith normal form over the
integers. Python ints never overflow, so no promotion step is needed.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from qshell import GLOBALS as g
from qshell.errors import CountDisagreement, MethodUnavailable, NotPure, ShellingBroken, TooLarge
from qshell.qcomplex import QComplex, from_facets, is_lex_shellable, subcomplex
from qshell.qorder import sort_q
from qshell.ordercx import (
    BettiReport,
    SimplicialComplex,
    betti_formula,
    count_homology_facets_characterized,
    count_homology_facets_oracle,
    order_complex,
)
from qshell.vecspace import Subspace, contains, intersect

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


########################################################
# SMITH NORMAL FORM
########################################################
@dataclass
class SmithForm:
    factors: List[int]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.factors if d > 1]


def _to_sparse(matrix) -> Tuple[Dict[int, Dict[int, int]], Dict[int, Set[int]]]:
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, Set[int]] = {}
    if isinstance(matrix, dict):
        items = matrix.items()
    else:
        items = (((i, j), v) for i, row in enumerate(matrix) for j, v in enumerate(row))
    for (i, j), v in items:
        v = int(v)
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
    return rows, cols


def _set(rows, cols, i: int, j: int, v: int) -> None:
    if v:
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)
    else:
        row = rows.get(i)
        if row is not None and j in row:
            del row[j]
            if not row:
                del rows[i]
        col = cols.get(j)
        if col is not None:
            col.discard(i)
            if not col:
                del cols[j]


def _row_axpy(rows, cols, target: int, source: int, factor: int) -> None:
    """row[target] -= factor * row[source]"""
    for j, v in list(rows[source].items()):
        _set(rows, cols, target, j, rows.get(target, {}).get(j, 0) - factor * v)


def _col_axpy(rows, cols, target: int, source: int, factor: int) -> None:
    """col[target] -= factor * col[source]"""
    for i in list(cols[source]):
        v = rows[i][source]
        _set(rows, cols, i, target, rows[i].get(target, 0) - factor * v)


def _find_pivot(rows) -> Tuple[int, int]:
    best = None
    for i, row in rows.items():
        for j, v in row.items():
            if best is None or abs(v) < best[2]:
                best = (i, j, abs(v))
                if best[2] == 1:
                    return i, j
    return best[0], best[1]


def _normalize_diagonal(diagonal: List[int]) -> List[int]:
    """Turns any diagonal into invariant factors d_1 | d_2 | ..."""
    units = [1 for d in diagonal if d == 1]
    rest = sorted(d for d in diagonal if d != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            gcd = math.gcd(a, b)
            rest[i], rest[j] = gcd, a // gcd * b
    return units + [d for d in rest if d == 1] + [d for d in rest if d != 1]


def smith_normal_form(matrix) -> SmithForm:
    """
    Nonzero invariant factors of an integer matrix, given as a list of rows or
    a {(row, col): value} dict. Pivots are entries of least absolute value; the
    row and column of a pivot are cleared by integer division and the pivot moves
    whenever a smaller remainder shows up.
    """
    rows, cols = _to_sparse(matrix)
    diagonal: List[int] = []

    while rows:
        r, c = _find_pivot(rows)
        while True:
            a = rows[r][c]
            for i in [i for i in cols[c] if i != r]:
                _row_axpy(rows, cols, i, r, rows[i][c] // a)
            if len(cols[c]) > 1:
                r = min((i for i in cols[c]), key=lambda i: abs(rows[i][c]))
                continue
            for j in [j for j in rows[r] if j != c]:
                _col_axpy(rows, cols, j, c, rows[r][j] // a)
            if len(rows[r]) > 1:
                c = min((j for j in rows[r]), key=lambda j: abs(rows[r][j]))
                continue
            break
        diagonal.append(abs(rows[r][c]))
        _set(rows, cols, r, c, 0)

    factors = _normalize_diagonal(diagonal)
    logger.debug("SNF: rank %d, torsion %s", len(factors), [d for d in factors if d > 1])
    return SmithForm(factors)


########################################################
# CHAIN COMPLEX
########################################################
@dataclass
class BoundaryMatrix:
    """∂_p : C_p -> C_{p-1}; rows index (p-1)-simplices, columns p-simplices."""
    degree: int
    nrows: int
    ncols: int
    entries: Dict[Tuple[int, int], int] = dc_field(default_factory=dict)

    def dense(self) -> List[List[int]]:
        m = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            m[i][j] = v
        return m


def simplex_count_bound(sc: SimplicialComplex) -> int:
    return sum(2 ** len(f) for f in sc.facets)


def simplices_by_degree(sc: SimplicialComplex, reduced: bool = True) -> Dict[int, List[Simplex]]:
    """Every face of sc grouped by degree, each list sorted."""
    bound = simplex_count_bound(sc)
    if bound > g.MAX_SIMPLICES:
        logger.warning("Refusing to list up to %d simplices (limit %d)", bound, g.MAX_SIMPLICES)
        raise TooLarge(f"complex has up to {bound} simplices, above limits.max_simplices = {g.MAX_SIMPLICES}")
    found: Set[Simplex] = set()
    for f in sc.facets:
        for size in range(1, len(f) + 1):
            found.update(itertools.combinations(f, size))
    out: Dict[int, List[Simplex]] = {}
    for s in found:
        out.setdefault(len(s) - 1, []).append(s)
    for p in out:
        out[p].sort()
    if reduced:
        out[-1] = [()]
    return out


def boundary_matrices(sc: SimplicialComplex, reduced: bool = True) -> List[BoundaryMatrix]:
    by_degree = simplices_by_degree(sc, reduced)
    low = 0 if reduced else 1
    mats: List[BoundaryMatrix] = []
    for p in range(low, sc.dim + 1):
        faces = by_degree.get(p - 1, [])
        index = {s: i for i, s in enumerate(faces)}
        cells = by_degree.get(p, [])
        m = BoundaryMatrix(p, len(faces), len(cells))
        for j, s in enumerate(cells):
            for pos in range(len(s)):
                m.entries[(index[s[:pos] + s[pos + 1:]], j)] = -1 if pos % 2 else 1
        mats.append(m)
    return mats


def compose_is_zero(mats: Sequence[BoundaryMatrix]) -> bool:
    """∂_{p-1} ∘ ∂_p = 0 for every consecutive pair."""
    by_degree = {m.degree: m for m in mats}
    for p, m in by_degree.items():
        lower = by_degree.get(p - 1)
        if lower is None:
            continue
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (i, k), v in lower.entries.items():
            by_row.setdefault(k, []).append((i, v))
        product: Dict[Tuple[int, int], int] = {}
        for (k, j), v in m.entries.items():
            for i, w in by_row.get(k, []):
                product[(i, j)] = product.get((i, j), 0) + w * v
        if any(product.values()):
            return False
    return True


def dump_boundary_triplets(mats: Sequence[BoundaryMatrix]) -> str:
    """Plain-text dump: a 'p nrows ncols' header per matrix then 'row col value' lines."""
    lines: List[str] = []
    for m in mats:
        lines.append(f"{m.degree} {m.nrows} {m.ncols}")
        for (i, j), v in sorted(m.entries.items()):
            lines.append(f"{i} {j} {v}")
    return "\n".join(lines) + "\n"


########################################################
# HOMOLOGY
########################################################
@dataclass
class HomologyGroup:
    degree: int
    rank: int
    torsion: List[int] = dc_field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass
class HomologyReport:
    groups: List[HomologyGroup]
    euler: int

    @property
    def concentrated_at(self) -> Optional[int]:
        nonzero = [h.degree for h in self.groups if not h.is_zero]
        return nonzero[0] if len(nonzero) == 1 else None

    @property
    def torsion_free(self) -> bool:
        return all(not h.torsion for h in self.groups)

    def rank(self, p: int) -> int:
        return next((h.rank for h in self.groups if h.degree == p), 0)

    def to_dict(self) -> Dict:
        return {
            "degrees": [{"p": h.degree, "rank": h.rank, "torsion": list(h.torsion)} for h in self.groups],
            "euler": self.euler,
            "concentrated_at": self.concentrated_at,
        }


def reduced_homology(sc: SimplicialComplex) -> HomologyReport:
    """H̃_p for p = -1 .. dim, from the SNF of every boundary map."""
    by_degree = simplices_by_degree(sc, reduced=True)
    forms: Dict[int, SmithForm] = {m.degree: smith_normal_form(m.entries) for m in boundary_matrices(sc, reduced=True)}

    groups: List[HomologyGroup] = []
    for p in range(-1, sc.dim + 1):
        n_p = len(by_degree.get(p, []))
        out_rank = forms[p].rank if p in forms else 0
        in_form = forms.get(p + 1)
        in_rank = in_form.rank if in_form else 0
        torsion = in_form.torsion if in_form else []
        groups.append(HomologyGroup(p, n_p - out_rank - in_rank, torsion))

    euler = sum((-1 if h.degree % 2 else 1) * h.rank for h in groups)
    report = HomologyReport(groups, euler)
    logger.info("Reduced homology: %s", ", ".join(f"H{h.degree}={h}" for h in groups))
    return report


def betti_numbers(sc: SimplicialComplex) -> Dict[int, int]:
    return {h.degree: h.rank for h in reduced_homology(sc).groups}


def euler_characteristic_from_faces(sc: SimplicialComplex) -> int:
    """Reduced Euler characteristic Σ_{p >= -1} (-1)^p f_p."""
    return sum((-1 if p % 2 else 1) * len(cells) for p, cells in simplices_by_degree(sc, reduced=True).items())


########################################################
# MAYER-VIETORIS STAGES
########################################################
@dataclass
class StageReport:
    stage: int
    facet: Subspace
    intersection_facets: int
    before: Dict[int, int]
    intersection: Dict[int, int]
    after: Dict[int, int]
    identity_holds: bool
    concentrated: bool

    def to_dict(self) -> Dict:
        return {
            "stage": self.stage,
            "facet": str(self.facet),
            "intersection_facets": self.intersection_facets,
            "before": self.before,
            "intersection": self.intersection,
            "after": self.after,
            "identity_holds": self.identity_holds,
            "concentrated": self.concentrated,
        }


@dataclass
class MayerVietorisReport:
    k: int
    stages: List[StageReport] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.identity_holds and s.concentrated for s in self.stages)

    @property
    def accumulated(self) -> int:
        """Σ over stages of β_{k-2} of the intersection complexes."""
        return sum(s.intersection.get(self.k - 2, 0) for s in self.stages)

    @property
    def final_rank(self) -> int:
        return self.stages[-1].after.get(self.k - 1, 0) if self.stages else 0

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "ok": self.ok,
            "accumulated": self.accumulated,
            "final_rank": self.final_rank,
            "stages": [s.to_dict() for s in self.stages],
        }


def _punctured_homology(c: QComplex) -> Tuple[Dict[int, int], bool]:
    report = reduced_homology(order_complex(c, punctured=True))
    return {h.degree: h.rank for h in report.groups}, report.torsion_free


def intersection_complex(facets: Sequence[Subspace], j: int) -> List[Subspace]:
    """Facets of ⟨F_1, ..., F_j⟩ ∩ ⟨F_{j+1}⟩ (0-based j): the maximal F_i ∩ F_{j+1}."""
    new = facets[j]
    meets: List[Subspace] = []
    for fi in facets[:j]:
        m = intersect(fi, new)
        if m not in meets:
            meets.append(m)
    return [m for m in meets if not any(o.dim > m.dim and contains(o, m) for o in meets)]


def mayer_vietoris_stage_check(c: QComplex, order: Optional[Sequence[Subspace]] = None) -> MayerVietorisReport:
    """
    Adds the facets one at a time and checks, at every degree n,
        β_n(⟨F_1..F_{j+1}⟩) = β_{n-1}(⟨F_1..F_j⟩ ∩ ⟨F_{j+1}⟩) + β_n(⟨F_1..F_j⟩)
    on punctured order complexes, together with concentration of the
    intersection's homology in degree k-2.
    """
    if not c.is_pure:
        raise NotPure("the Mayer-Vietoris stage check needs a pure q-complex")
    facets = list(order) if order is not None else sort_q(c.facets)
    k = c.dim
    report = MayerVietorisReport(k)

    before, _ = _punctured_homology(subcomplex(c, facets[:1]))
    report.stages.append(StageReport(1, facets[0], 0, {}, {}, before, all(v == 0 for v in before.values()), True))

    for j in range(1, len(facets)):
        meets = intersection_complex(facets, j)
        low = [m for m in meets if m.dim != k - 1]
        if low:
            raise ShellingBroken(
                f"stage {j + 1}: {facets[j]} meets the earlier facets in {low[0]} of dimension {low[0].dim}, not {k - 1}"
            )
        if k - 1 == 0:
            inter = {-1: 1, 0: 0}
            inter_free = True
        else:
            inter, inter_free = _punctured_homology(from_facets(c.field, c.n, meets))
        after, after_free = _punctured_homology(subcomplex(c, facets[: j + 1]))

        degrees = range(-1, k)
        identity = all(after.get(n, 0) == inter.get(n - 1, 0) + before.get(n, 0) for n in degrees)
        concentrated = inter_free and after_free and all(v == 0 for p, v in inter.items() if p != k - 2)
        if not identity:
            logger.warning("Mayer-Vietoris identity fails at stage %d", j + 1)
        report.stages.append(StageReport(j + 1, facets[j], len(meets), before, inter, after, identity, concentrated))
        before = after

    logger.info("Mayer-Vietoris check over %d stages: ok=%s, accumulated=%d", len(facets), report.ok, report.accumulated)
    return report


########################################################
# METHOD COMPARISON
########################################################
HOMOLOGY_METHODS = ("formula", "count", "snf", "all")


@dataclass
class MethodComparison:
    """
    Top reduced homology of K(Δ̊) by each requested method. agree needs equal
    ranks and, when SNF ran next to another method, H̃ torsion-free and
    concentrated in degree k-1 (or zero everywhere when every rank is 0).
    """
    label: str
    t: int
    degree: int
    betti: Optional[BettiReport] = None
    oracle_count: Optional[int] = None
    characterized_count: Optional[int] = None
    homology: Optional[HomologyReport] = None
    euler_from_faces: Optional[int] = None
    sc: Optional[SimplicialComplex] = dc_field(default=None, repr=False)

    @property
    def ranks(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        if self.betti is not None:
            out["formula"] = self.betti.betti_rank
        if self.oracle_count is not None:
            out["count"] = self.oracle_count
        if self.homology is not None:
            out["snf"] = self.homology.rank(self.degree)
        return out

    @property
    def concentrated(self) -> bool:
        if self.homology is None:
            return True
        if self.homology.concentrated_at == self.degree:
            return True
        return all(h.is_zero for h in self.homology.groups) and not any(self.ranks.values())

    @property
    def agree(self) -> bool:
        ranks = self.ranks
        if len(set(ranks.values())) > 1:
            return False
        if self.homology is None or len(ranks) == 1:
            return True
        return self.concentrated and self.homology.torsion_free

    def to_dict(self) -> Dict:
        out: Dict = {"complex": self.label, "t": self.t, "degree": self.degree}
        if self.betti is not None:
            out.update(self.betti.to_dict())
        out["oracle_count"] = self.oracle_count
        out["characterized_count"] = self.characterized_count
        if self.homology is not None:
            out["homology"] = self.homology.to_dict()
            out["euler_from_faces"] = self.euler_from_faces
        out["ranks"] = self.ranks
        out["agree"] = self.agree
        return out


def compare_homology_methods(c: QComplex, method: str = "all", label: str = "") -> MethodComparison:
    """Runs the requested homology methods on c. Only 'snf' accepts complexes that are not lex shellable."""
    if method not in HOMOLOGY_METHODS:
        raise MethodUnavailable(f"unknown method '{method}'")
    if method != "snf" and not (c.is_pure and is_lex_shellable(c).ok):
        raise MethodUnavailable(f"method '{method}' needs a lexicographically shellable complex; use --method snf")

    result = MethodComparison(label, len(c.facets), c.dim - 1)
    if method in ("formula", "all"):
        result.betti = betti_formula(c)
    if method in ("count", "all"):
        oracle = count_homology_facets_oracle(c)
        characterized = count_homology_facets_characterized(c)
        if oracle != characterized:
            raise CountDisagreement(f"restriction oracle gives {oracle}, characterization gives {characterized}")
        result.oracle_count = oracle
        result.characterized_count = characterized
    if method in ("snf", "all"):
        sc = order_complex(c, punctured=True)
        result.sc = sc
        result.homology = reduced_homology(sc)
        result.euler_from_faces = euler_characteristic_from_faces(sc)

    if not result.agree:
        logger.error("Homology methods disagree on %s: %s", label or "complex", result.ranks)
    return result

"""
qmatroid.py

q-matroids M = (E, ρ) on E = F_q^n: rank functions, the rank-metric code
construction, exhaustive axiom checks, independent spaces, bases and the
q-matroid complex Δ_M.

Rank functions are memoized over canonical subspaces. The memo table is guarded
by a lock so concurrent lookups stay consistent.

Generator-matrix file format (for --code):

    field gf(2^4):x^4+x+1
    base gf(2)
    a^2+a+1 a^2 a^3+a+1 a^3+a^2+a+1
    ...

Rows are whitespace- or comma-separated extension-field elements, written as
polynomials in 'a' or as integer reps.
"""

import logging
import threading
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from qshell import GLOBALS as g
from qshell.errors import DimensionMismatch, FieldMismatch, NotPure, ParseError, TooLarge
from qshell.gf import FieldSpec, galois_field, parse_element, parse_field_spec
from qshell.qcomplex import QComplex, from_facets
from qshell.vecspace import (
    Matrix,
    Row,
    Subspace,
    contains,
    enumerate_all_subspaces,
    intersect,
    subspace_count,
    sum_,
)

logger = logging.getLogger(__name__)


########################################################
# RANK-METRIC CODES
########################################################
@dataclass(frozen=True)
class RankMetricCode:
    """
    A code over F_{q^m} given by a k x n generator matrix G (integer reps over
    'ext'), with 'base' the prime field F_q its q-matroid lives over.
    """
    base: FieldSpec
    ext: FieldSpec
    G: Matrix

    @property
    def k(self) -> int:
        return len(self.G)

    @property
    def n(self) -> int:
        return len(self.G[0]) if self.G else 0


def make_code(base: FieldSpec, ext: FieldSpec, G: Sequence[Sequence[int]]) -> RankMetricCode:
    """
    Validates and builds a RankMetricCode. Only the embedding F_p -> F_{p^e} is
    supported, so base must be the prime subfield of ext.
    """
    if base.e != 1 or base.p != ext.p:
        raise FieldMismatch(
            f"base {base} must be the prime subfield of {ext}; other subfield embeddings are not supported"
        )
    rows = tuple(tuple(int(x) for x in r) for r in G)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("generator matrix must be a non-empty rectangle")
    GF = galois_field(ext)
    rank = int(np.linalg.matrix_rank(GF(np.array(rows))))
    if rank != len(rows):
        raise DimensionMismatch(f"generator matrix has rank {rank} but {len(rows)} rows")
    return RankMetricCode(base, ext, rows)


def code_product(code: RankMetricCode, u: Subspace) -> Matrix:
    """G · Yᵀ over F_{q^m}, Y the RREF basis of u (F_p entries embed as constants)."""
    if u.field != code.base or u.n != code.n:
        raise DimensionMismatch(f"subspace of F^{u.n} over {u.field} does not match a code of length {code.n}")
    if not u.rows:
        return ()
    GF = galois_field(code.ext)
    product = GF(np.array(code.G)) @ GF(np.array(u.rows)).T
    return tuple(tuple(int(x) for x in row) for row in product)


def rank_from_code(code: RankMetricCode, u: Subspace) -> int:
    """ρ(U) = rank over F_{q^m} of G · Yᵀ."""
    product = code_product(code, u)
    if not product:
        return 0
    GF = galois_field(code.ext)
    return int(np.linalg.matrix_rank(GF(np.array(product))))


def code_kernel_vector(code: RankMetricCode, u: Subspace) -> Optional[Row]:
    """
    A nonzero x with (G · Yᵀ) x = 0, scaled so its first nonzero entry is 1;
    None when G · Yᵀ has full column rank.
    """
    product = code_product(code, u)
    if not product:
        return None
    GF = galois_field(code.ext)
    kernel = GF(np.array(product)).null_space()
    if kernel.shape[0] == 0:
        return None
    x = kernel[0]
    x = x / next(c for c in x if c)
    return tuple(int(c) for c in x)


def read_generator_text(text: str) -> RankMetricCode:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 3:
        raise ParseError("generator file needs 'field', 'base' and at least one matrix row")
    head, base_line = lines[0].split(None, 1), lines[1].split(None, 1)
    if len(head) != 2 or head[0] != "field" or len(base_line) != 2 or base_line[0] != "base":
        raise ParseError("generator file must start with 'field <spec>' then 'base <spec>'")
    ext = parse_field_spec(head[1])
    base = parse_field_spec(base_line[1])
    rows = []
    for ln in lines[2:]:
        tokens = [t for t in ln.replace(",", " ").split() if t]
        rows.append([parse_element(ext, t, "a") for t in tokens])
    return make_code(base, ext, rows)


def read_generator_file(path: str) -> RankMetricCode:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read generator file '{path}': {e}") from e
    return read_generator_text(text)


########################################################
# Q-MATROIDS
########################################################
@dataclass
class QMatroid:
    field: FieldSpec
    n: int
    rank_fn: Callable[[Subspace], int]
    name: str = "q-matroid"
    _memo: Dict[Subspace, int] = dc_field(default_factory=dict, repr=False)
    _lock: threading.Lock = dc_field(default_factory=threading.Lock, repr=False)

    def rank(self, u: Subspace) -> int:
        with self._lock:
            hit = self._memo.get(u)
        if hit is not None:
            return hit
        value = int(self.rank_fn(u))
        with self._lock:
            self._memo.setdefault(u, value)
        return value

    @property
    def full_rank(self) -> int:
        """r = ρ(E)."""
        full = Subspace(self.field, self.n, tuple(tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n)))
        return self.rank(full)


def code_matroid(code: RankMetricCode) -> QMatroid:
    return QMatroid(code.base, code.n, lambda u: rank_from_code(code, u), name="code")


def free_matroid(spec: FieldSpec, n: int) -> QMatroid:
    return QMatroid(spec, n, lambda u: u.dim, name="free")


def uniform_matroid(spec: FieldSpec, n: int, k: int) -> QMatroid:
    return QMatroid(spec, n, lambda u: min(u.dim, k), name=f"uniform U_{k},{n}")


def table_matroid(spec: FieldSpec, n: int, table: Mapping[Subspace, int], default: Optional[Callable[[Subspace], int]] = None) -> QMatroid:
    """Rank given by an explicit table; subspaces missing from it fall back to default (dim if None)."""
    fallback = default or (lambda u: u.dim)
    return QMatroid(spec, n, lambda u: table[u] if u in table else fallback(u), name="table")


def _all_subspaces(m: QMatroid) -> List[Subspace]:
    total = subspace_count(m.n, m.field.q)
    if total > g.MAX_SUBSPACES:
        logger.warning("Refusing to enumerate %d subspaces (limit %d)", total, g.MAX_SUBSPACES)
        raise TooLarge(f"Σ(E) has {total} subspaces, above the limit {g.MAX_SUBSPACES}")
    return enumerate_all_subspaces(m.field, m.n)


@dataclass
class AxiomReport:
    ok: bool
    checked: int
    violation: Optional[Tuple[str, Subspace, Optional[Subspace]]] = None

    def to_dict(self) -> Dict:
        out = {"ok": self.ok, "checked": self.checked, "violation": None}
        if self.violation:
            axiom, u, v = self.violation
            out["violation"] = {"axiom": axiom, "U": str(u), "V": str(v) if v is not None else None}
        return out


def verify_axioms(m: QMatroid) -> AxiomReport:
    """
    Exhaustive check of
      (R1) 0 <= ρ(U) <= dim U
      (R2) U ⊆ V  =>  ρ(U) <= ρ(V)
      (R3) ρ(U+V) + ρ(U∩V) <= ρ(U) + ρ(V)
    Stops at the first violation.
    """
    spaces = _all_subspaces(m)
    checked = 0

    for u in spaces:
        checked += 1
        if not 0 <= m.rank(u) <= u.dim:
            return AxiomReport(False, checked, ("R1", u, None))

    for u in spaces:
        for v in spaces:
            if u.dim <= v.dim and u != v and contains(v, u):
                checked += 1
                if m.rank(u) > m.rank(v):
                    return AxiomReport(False, checked, ("R2", u, v))

    for i, u in enumerate(spaces):
        for v in spaces[i + 1:]:
            checked += 1
            if m.rank(sum_(u, v)) + m.rank(intersect(u, v)) > m.rank(u) + m.rank(v):
                return AxiomReport(False, checked, ("R3", u, v))

    logger.info("%s satisfies R1-R3 (%d checks)", m.name, checked)
    return AxiomReport(True, checked)


def independent_spaces(m: QMatroid) -> List[Subspace]:
    """I_M: every U with ρ(U) = dim U."""
    return [u for u in _all_subspaces(m) if m.rank(u) == u.dim]


def bases(m: QMatroid) -> List[Subspace]:
    """B_M: the maximal independent spaces. They all have dimension ρ(E)."""
    indep = independent_spaces(m)
    by_dim: Dict[int, List[Subspace]] = {}
    for u in indep:
        by_dim.setdefault(u.dim, []).append(u)
    maximal = [
        u for u in indep
        if not any(contains(v, u) for v in by_dim.get(u.dim + 1, []))
    ]
    dims = {u.dim for u in maximal}
    if len(dims) != 1:
        raise NotPure(f"maximal independent spaces have dimensions {sorted(dims)}; rank function is not a q-matroid")
    return maximal


def matroid_complex(m: QMatroid) -> QComplex:
    """Δ_M, the q-complex whose faces are the independent spaces."""
    facets = bases(m)
    c = from_facets(m.field, m.n, facets)
    if not c.is_pure:
        raise NotPure("q-matroid complex came out impure")
    logger.info("Δ_M for %s has %d facets of dimension %d", m.name, len(c.facets), c.dim)
    return c

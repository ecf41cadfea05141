"""
vecspace.py

Linear algebra over F_q (and F_{q^m} for the code matrices): RREF, rank and
kernels through galois FieldArrays (bitmask XOR elimination over F_2), canonical
subspaces, the subspace lattice operations, Grassmannian enumeration,
Gaussian binomials and the minimum vector of a set difference U minus V.

A Subspace always stores its basis in reduced row echelon form with no zero rows,
so two Subspace values are equal (and hash equal) iff they are the same subspace.

Also holds the facet-list file format:

    q=gf(2) n=4
    # one subspace per line, basis vectors separated by ';'
    0,1,0,0;0,0,1,0;0,0,0,1
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from qshell import GLOBALS as g
from qshell.errors import (
    AmbientMismatch,
    BadDimension,
    DimensionMismatch,
    EmptyDifference,
    FieldMismatch,
    NotNested,
    ParseError,
    TooLarge,
)
from qshell.gf import FieldSpec, FieldVector, arith_for, format_field_spec, galois_field, parse_field_spec

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]
Matrix = Tuple[Row, ...]

########################################################
# ROW REDUCTION
########################################################
def _rref_gf2(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[Row], List[int]]:
    """
    Packed F_2 accelerator: rows become bitmasks (column 0 is the high bit) and
    elimination is XOR. Returns (nonzero rows in RREF, pivot columns).
    """
    masks = [sum(1 << (ncols - 1 - j) for j, x in enumerate(r) if x) for r in rows]
    reduced: List[int] = []
    pivots: List[int] = []
    for col in range(ncols):
        bit = 1 << (ncols - 1 - col)
        idx = next((i for i, m in enumerate(masks) if m & bit), None)
        if idx is None:
            continue
        piv = masks.pop(idx)
        masks = [m ^ piv if m & bit else m for m in masks]
        reduced = [m ^ piv if m & bit else m for m in reduced]
        reduced.append(piv)
        pivots.append(col)
    return [tuple((m >> (ncols - 1 - j)) & 1 for j in range(ncols)) for m in reduced], pivots


def _field_array(rows: Sequence[Sequence[int]], spec: FieldSpec, ncols: int):
    GF = galois_field(spec)
    return GF(np.array([list(r) for r in rows], dtype=np.int64).reshape(len(rows), ncols))


def _rows_of(arr) -> List[Row]:
    return [tuple(int(x) for x in r) for r in arr.tolist() if any(r)]


def _rref_rows(rows: Sequence[Sequence[int]], spec: FieldSpec, ncols: int) -> Tuple[List[Row], List[int]]:
    """Nonzero RREF rows and pivot columns of rows over spec."""
    if not rows:
        return [], []
    if spec.q == 2:
        return _rref_gf2(rows, ncols)
    reduced = _rows_of(_field_array(rows, spec, ncols).row_reduce())
    pivots = [next(j for j, x in enumerate(r) if x) for r in reduced]
    return reduced, pivots


def rref(matrix: Sequence[Sequence[int]], spec: FieldSpec) -> Tuple[Matrix, int]:
    """
    Reduced row echelon form of matrix over spec, with zero rows moved to the
    bottom so the shape is unchanged. Returns (rref_matrix, rank).
    """
    if not matrix:
        return (), 0
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise DimensionMismatch("matrix rows have different lengths")
    reduced, pivots = _rref_rows(matrix, spec, ncols)
    rank = len(pivots)
    zero = tuple([0] * ncols)
    return tuple(reduced) + (zero,) * (len(matrix) - rank), rank


def matrix_rank(matrix: Sequence[Sequence[int]], spec: FieldSpec) -> int:
    return rref(matrix, spec)[1]


def null_space(matrix: Sequence[Sequence[int]], spec: FieldSpec, ncols: int) -> List[Row]:
    """Basis of {x : matrix . x = 0} over spec, in RREF."""
    if not matrix:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    if spec.q == 2:
        reduced, pivots = _rref_gf2(matrix, ncols)
        basis = []
        for f in (c for c in range(ncols) if c not in pivots):
            x = [0] * ncols
            x[f] = 1
            for row, pc in zip(reduced, pivots):
                x[pc] = row[f]
            basis.append(tuple(x))
        return _rref_gf2(basis, ncols)[0]
    kernel = _field_array(matrix, spec, ncols).null_space()
    if kernel.shape[0] == 0:
        return []
    return _rows_of(kernel.row_reduce())


def transpose(matrix: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*matrix)) if matrix else ()


########################################################
# SUBSPACES
########################################################
@dataclass(frozen=True)
class Subspace:
    """
    An F_q-subspace of F_q^n. rows is the RREF basis (no zero rows); build
    instances through span() or subspace() so that invariant holds.
    """
    field: FieldSpec
    n: int
    rows: Matrix

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.rows)

    def basis_vectors(self) -> List[FieldVector]:
        return [FieldVector(self.field, r) for r in self.rows]

    def is_zero(self) -> bool:
        return not self.rows

    def __str__(self) -> str:
        if not self.rows:
            return "<0>"
        return "<" + "; ".join(",".join(str(x) for x in r) for r in self.rows) + ">"


def subspace(spec: FieldSpec, n: int, rows: Iterable[Sequence[int]]) -> Subspace:
    """Canonical Subspace spanned by raw coordinate rows."""
    rows = [tuple(int(x) for x in r) for r in rows]
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"vector of length {len(r)} in F_q^{n}")
    reduced, _ = _rref_rows(rows, spec, n)
    return Subspace(spec, n, tuple(tuple(r) for r in reduced))


def span(vectors: Sequence[FieldVector], n: int, spec: FieldSpec | None = None) -> Subspace:
    """
    The canonical subspace spanned by vectors. span([]) is the zero subspace,
    which needs spec since there is no vector to read the field from.
    """
    if not vectors:
        if spec is None:
            raise DimensionMismatch("span of an empty list needs an explicit field")
        return Subspace(spec, n, ())
    field = vectors[0].field
    for v in vectors:
        if v.n != n:
            raise DimensionMismatch(f"vector of length {v.n} in F_q^{n}")
        if v.field != field:
            raise FieldMismatch("vectors from different fields")
    return subspace(field, n, [v.coords for v in vectors])


def zero_subspace(spec: FieldSpec, n: int) -> Subspace:
    return Subspace(spec, n, ())


def full_space(spec: FieldSpec, n: int) -> Subspace:
    return Subspace(spec, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.field != v.field or u.n != v.n:
        raise AmbientMismatch(f"subspaces of F^{u.n} over {u.field} and F^{v.n} over {v.field}")


def sum_(u: Subspace, v: Subspace) -> Subspace:
    """U + V."""
    _same_ambient(u, v)
    return subspace(u.field, u.n, u.rows + v.rows)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """
    U ∩ V from the left kernel of the stacked basis [U; V]: every relation
    sum a_i u_i = - sum b_j v_j gives the common vector sum a_i u_i.
    """
    _same_ambient(u, v)
    if not u.rows or not v.rows:
        return zero_subspace(u.field, u.n)
    stacked = u.rows + v.rows
    if u.field.q == 2:
        relations = null_space(transpose(stacked), u.field, len(stacked))
        common = []
        for rel in relations:
            vec = [0] * u.n
            for coeff, row in zip(rel[: u.dim], u.rows):
                if coeff:
                    vec = [x ^ y for x, y in zip(vec, row)]
            common.append(vec)
        return subspace(u.field, u.n, common)
    A = _field_array(stacked, u.field, u.n)
    relations = A.left_null_space()
    if relations.shape[0] == 0:
        return zero_subspace(u.field, u.n)
    return subspace(u.field, u.n, _rows_of(relations[:, : u.dim] @ A[: u.dim]))


def contains_vec(u: Subspace, x: FieldVector | Sequence[int]) -> bool:
    """Membership of a vector via the RREF residual."""
    coords = x.coords if isinstance(x, FieldVector) else tuple(x)
    if isinstance(x, FieldVector) and x.field != u.field:
        raise AmbientMismatch(f"vector over {x.field} tested against subspace over {u.field}")
    if len(coords) != u.n:
        raise AmbientMismatch(f"vector of length {len(coords)} tested against F^{u.n}")
    return _residual_is_zero(u, coords)


def _residual_is_zero(u: Subspace, coords: Sequence[int]) -> bool:
    arith = arith_for(u.field)
    residual = list(coords)
    for row, pc in zip(u.rows, u.pivots):
        c = residual[pc]
        if c:
            residual = [arith.sub(a, arith.mul(c, b)) for a, b in zip(residual, row)]
    return not any(residual)


def contains(u: Subspace, v: Subspace) -> bool:
    """True iff V ⊆ U."""
    _same_ambient(u, v)
    if v.dim > u.dim:
        return False
    return all(_residual_is_zero(u, r) for r in v.rows)


def elements(u: Subspace) -> List[Row]:
    """
    All q^dim vectors of u. Over F_2 with n <= 64 the basis is packed into ints
    and combined by XOR.
    """
    spec = u.field
    if spec.q == 2 and u.n <= 64:
        packed = [int("".join(str(x) for x in r), 2) for r in u.rows]
        values = [0]
        for b in packed:
            values = values + [v ^ b for v in values]
        width = u.n
        return [tuple((val >> (width - 1 - i)) & 1 for i in range(width)) for val in values]

    arith = arith_for(spec)
    out: List[Row] = [tuple([0] * u.n)]
    for row in u.rows:
        extended = list(out)
        for c in range(1, spec.q):
            scaled = [arith.mul(c, x) for x in row]
            extended.extend(tuple(arith.add(a, b) for a, b in zip(v, scaled)) for v in out)
        out = extended
    return out


def combine(spec: FieldSpec, coeffs: Sequence[int], basis: Sequence[Row], n: int) -> Row:
    """sum coeffs[i] * basis[i]."""
    arith = arith_for(spec)
    vec = [0] * n
    for c, row in zip(coeffs, basis):
        if c:
            vec = [arith.add(a, arith.mul(c, b)) for a, b in zip(vec, row)]
    return tuple(vec)


def complement_basis(a: Subspace, b: Subspace) -> List[Row]:
    """Rows of b's basis that extend a's basis to a basis of b (quotient coordinates)."""
    _same_ambient(a, b)
    chosen: List[Row] = []
    current = a
    for row in b.rows:
        if not _residual_is_zero(current, row):
            chosen.append(row)
            current = subspace(a.field, a.n, current.rows + (row,))
    return chosen


########################################################
# GAUSSIAN BINOMIALS
########################################################
@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """
    The q-binomial coefficient prod_{i<k} (q^n - q^i) / (q^k - q^i), the number
    of k-dimensional subspaces of F_q^n. Zero when k > n or k < 0.
    """
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    return num // den


def subspace_count(n: int, q: int) -> int:
    """|Σ(F_q^n)|, all subspaces of every dimension."""
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


########################################################
# ENUMERATION
########################################################
def _guard_ambient(spec: FieldSpec, n: int) -> None:
    if spec.q ** n > g.MAX_AMBIENT_SIZE:
        logger.warning("Refusing sweep over F_%d^%d (limit %d vectors)", spec.q, n, g.MAX_AMBIENT_SIZE)
        raise TooLarge(
            f"q^n = {spec.q}^{n} exceeds the desk-scale limit {g.MAX_AMBIENT_SIZE}; "
            "reduce n or raise limits.max_ambient_size in config.yaml"
        )


def _rref_profiles(spec: FieldSpec, n: int, k: int) -> Iterable[Matrix]:
    """Every k x n RREF matrix of full rank, by pivot set then free entries."""
    for piv in itertools.combinations(range(n), k):
        pivot_set = set(piv)
        free_slots = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pivot_set]
        for values in itertools.product(range(spec.q), repeat=len(free_slots)):
            m = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                m[i][pc] = 1
            for (i, j), val in zip(free_slots, values):
                m[i][j] = val
            yield tuple(tuple(r) for r in m)


def enumerate_grassmannian(spec: FieldSpec, n: int, k: int) -> List[Subspace]:
    """
    All k-dimensional subspaces of F_q^n, each once, in RREF-profile order
    (not ≺_q order; qorder.sort_q does that).
    """
    if not 0 <= k <= n:
        raise BadDimension(f"k = {k} outside 0..{n}")
    _guard_ambient(spec, n)
    out = [Subspace(spec, n, rows) for rows in _rref_profiles(spec, n, k)]
    logger.debug("G_%d(F_%d^%d) has %d elements", k, spec.q, n, len(out))
    return out


def enumerate_all_subspaces(spec: FieldSpec, n: int) -> List[Subspace]:
    out: List[Subspace] = []
    for k in range(n + 1):
        out.extend(enumerate_grassmannian(spec, n, k))
    return out


def _lift(base_rows: Matrix, coords: Matrix, basis: Sequence[Row], spec: FieldSpec, n: int) -> Subspace:
    lifted = tuple(combine(spec, c, basis, n) for c in coords)
    return subspace(spec, n, base_rows + lifted)


def enumerate_subspaces_of(u: Subspace, k: int) -> List[Subspace]:
    """All k-dimensional subspaces of u, via coordinates relative to u's basis."""
    if not 0 <= k <= u.dim:
        raise BadDimension(f"k = {k} outside 0..{u.dim}")
    _guard_ambient(u.field, u.dim)
    return [_lift((), coords, u.rows, u.field, u.n) for coords in _rref_profiles(u.field, u.dim, k)]


def enumerate_between(a: Subspace, b: Subspace, k: int) -> List[Subspace]:
    """
    All k-dimensional W with a ⊆ W ⊆ b, in quotient coordinates relative to a.
    There are gaussian_binomial(dim b - dim a, k - dim a, q) of them.
    """
    _same_ambient(a, b)
    if not contains(b, a):
        raise NotNested(f"{a} is not contained in {b}")
    if not a.dim <= k <= b.dim:
        raise BadDimension(f"k = {k} outside {a.dim}..{b.dim}")
    comp = complement_basis(a, b)
    _guard_ambient(a.field, len(comp))
    return [_lift(a.rows, coords, comp, a.field, a.n) for coords in _rref_profiles(a.field, len(comp), k - a.dim)]


########################################################
# MINIMUM VECTORS
########################################################
def vector_key(coords: Sequence[int], order: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """Sort key of a vector under ≺; order is an optional rank table over reps."""
    if order is None:
        return tuple(coords)
    return tuple(order[c] for c in coords)


def min_nonzero_vector(u: Subspace) -> Row:
    """
    The ≺-least nonzero vector of u: its last RREF row. Multiples of that row are
    the only vectors with that many leading zeros, and its pivot entry is 1, the
    least nonzero element under any admissible order.
    """
    if not u.rows:
        raise EmptyDifference("the zero subspace has no nonzero vector")
    return u.rows[-1]


def min_vector_of_difference(u: Subspace, v: Subspace, order: Optional[Sequence[int]] = None) -> Row:
    """
    min_≺ (U minus V). With v the zero subspace this is the minimum nonzero
    vector of u, found from the pivots.
    """
    _same_ambient(u, v)
    if contains(v, u):
        raise EmptyDifference(f"{u} is contained in {v}")
    if not v.rows:
        return min_nonzero_vector(u)
    candidates = [x for x in elements(u) if not _residual_is_zero(v, x)]
    return min(candidates, key=lambda x: vector_key(x, order))


########################################################
# FACET-LIST FILE FORMAT
########################################################
def format_subspace_line(u: Subspace) -> str:
    return ";".join(",".join(str(x) for x in r) for r in u.rows)


def parse_subspace_line(line: str, spec: FieldSpec, n: int) -> Subspace:
    rows = []
    for chunk in line.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            row = tuple(int(x) for x in chunk.split(","))
        except ValueError as e:
            raise ParseError(f"bad vector '{chunk}': {e}") from e
        if len(row) != n:
            raise ParseError(f"vector '{chunk}' has {len(row)} coordinates, expected {n}")
        if any(not 0 <= x < spec.q for x in row):
            raise ParseError(f"vector '{chunk}' has an entry outside 0..{spec.q - 1}")
        rows.append(row)
    return subspace(spec, n, rows)


def parse_header(line: str) -> Tuple[FieldSpec, int]:
    """'q=<spec> n=<n>'"""
    fields = dict(part.split("=", 1) for part in line.split() if "=" in part)
    if "q" not in fields or "n" not in fields:
        raise ParseError(f"bad header '{line.strip()}' (expected 'q=<spec> n=<n>')")
    try:
        n = int(fields["n"])
    except ValueError as e:
        raise ParseError(f"bad n in header '{line.strip()}'") from e
    return parse_field_spec(fields["q"]), n


def read_facets_text(text: str) -> Tuple[FieldSpec, int, List[Subspace]]:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("facet file is empty")
    spec, n = parse_header(lines[0])
    return spec, n, [parse_subspace_line(ln, spec, n) for ln in lines[1:]]


def read_facets_file(path: str) -> Tuple[FieldSpec, int, List[Subspace]]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read facet file '{path}': {e}") from e
    return read_facets_text(text)


def format_facets_file(spec: FieldSpec, n: int, facets: Sequence[Subspace]) -> str:
    lines = [f"q={format_field_spec(spec)} n={n}"]
    lines.extend(format_subspace_line(u) for u in facets)
    return "\n".join(lines) + "\n"

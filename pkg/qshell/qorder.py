"""
qorder.py

The orderings on subspaces and chains:
  - cmp_q: U ≺_q V iff min(U minus V) ≺ min(V minus U), for dim U = dim V
  - cmp_l: maximal chains compared by cmp_q at the largest differing position
  - replace_at: the chain with one interior space swapped for another
  - greedy_min_refinement: V_i = V_{i-1} ⊕ <min(top minus V_{i-1})>
  - is_locally_min / contains_min_vector: the two local-minimality tests used
    when counting homology facets

Every comparison accepts an optional 'order', a rank table over element reps
(see gf.admissible_permutation). None means the default order on reps.
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from qshell.errors import BadArgs, BadIndex, DimensionMismatch, NotBetween, NotNested, ProfileMismatch
from qshell.vecspace import (
    Row,
    Subspace,
    _same_ambient,
    contains,
    contains_vec,
    enumerate_between,
    min_nonzero_vector,
    min_vector_of_difference,
    subspace,
    vector_key,
)

logger = logging.getLogger(__name__)


########################################################
# CHAINS
########################################################
@dataclass(frozen=True)
class Chain:
    """A strictly increasing sequence of subspaces of one ambient space."""
    spaces: Tuple[Subspace, ...]

    def __post_init__(self):
        for lo, hi in zip(self.spaces, self.spaces[1:]):
            _same_ambient(lo, hi)
            if lo.dim >= hi.dim or not contains(hi, lo):
                raise NotNested(f"chain is not strictly increasing at {lo} ⊂ {hi}")

    def __len__(self) -> int:
        return len(self.spaces)

    def __getitem__(self, i: int) -> Subspace:
        return self.spaces[i]

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.spaces)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(u.dim for u in self.spaces)

    @property
    def is_complete(self) -> bool:
        return all(b - a == 1 for a, b in zip(self.dims, self.dims[1:]))

    def __str__(self) -> str:
        return " ⊂ ".join(str(u) for u in self.spaces)


def make_chain(spaces: Sequence[Subspace]) -> Chain:
    return Chain(tuple(spaces))


########################################################
# ≺_q
########################################################
@lru_cache(maxsize=1 << 18)
def cmp_q(u: Subspace, v: Subspace, order: Optional[Tuple[int, ...]] = None) -> int:
    """
    Compares equidimensional subspaces: -1 if min(U minus V) ≺ min(V minus U),
    0 if U = V, 1 otherwise.
    """
    _same_ambient(u, v)
    if u.dim != v.dim:
        raise DimensionMismatch(f"cmp_q needs equal dimensions, got {u.dim} and {v.dim}")
    if u == v:
        return 0
    a = vector_key(min_vector_of_difference(u, v, order), order)
    b = vector_key(min_vector_of_difference(v, u, order), order)
    return -1 if a < b else 1


def sort_q(spaces: Sequence[Subspace], order: Optional[Tuple[int, ...]] = None) -> List[Subspace]:
    """Sorts equidimensional subspaces under ≺_q."""
    return sorted(spaces, key=cmp_to_key(lambda a, b: cmp_q(a, b, order)))


def min_q(spaces: Sequence[Subspace], order: Optional[Tuple[int, ...]] = None) -> Subspace:
    best = spaces[0]
    for u in spaces[1:]:
        if cmp_q(u, best, order) < 0:
            best = u
    return best


########################################################
# ⪯_l
########################################################
def cmp_l(a: Chain, b: Chain, order: Optional[Tuple[int, ...]] = None) -> int:
    """
    Compares complete chains of the same dimension profile. The largest index e
    with a[e] != b[e] decides, by cmp_q(a[e], b[e]).
    """
    if not (a.is_complete and b.is_complete) or a.dims != b.dims:
        raise ProfileMismatch(f"cannot compare chains with profiles {a.dims} and {b.dims}")
    for e in range(len(a) - 1, -1, -1):
        if a[e] != b[e]:
            return cmp_q(a[e], b[e], order)
    return 0


def sort_l(chains: Sequence[Chain], order: Optional[Tuple[int, ...]] = None) -> List[Chain]:
    return sorted(chains, key=cmp_to_key(lambda x, y: cmp_l(x, y, order)))


def replace_at(c: Chain, a: Subspace, i: int) -> Chain:
    """
    The chain with position i replaced by a. Requires c[i-1] ⊂ a ⊂ c[i+1] and
    dim a = dim c[i].
    """
    if not c.is_complete:
        raise ProfileMismatch("replace_at needs a complete chain")
    if not 0 < i < len(c) - 1:
        raise BadIndex(f"index {i} is not interior to a chain of length {len(c)}")
    lo, hi = c[i - 1], c[i + 1]
    if a.dim != c[i].dim or not contains(a, lo) or not contains(hi, a):
        raise NotBetween(f"{a} does not sit between {lo} and {hi}")
    spaces = list(c.spaces)
    spaces[i] = a
    return Chain(tuple(spaces))


########################################################
# GREEDY MINIMA
########################################################
def greedy_minima(bottom: Subspace, top: Subspace, order: Optional[Tuple[int, ...]] = None) -> List[Row]:
    """The vectors adjoined by greedy_min_refinement, in order."""
    if not contains(top, bottom):
        raise NotNested(f"{bottom} is not contained in {top}")
    minima: List[Row] = []
    current = bottom
    while current.dim < top.dim:
        x = min_vector_of_difference(top, current, order)
        minima.append(x)
        current = subspace(top.field, top.n, current.rows + (x,))
    return minima


def greedy_min_refinement(bottom: Subspace, top: Subspace, order: Optional[Tuple[int, ...]] = None) -> Chain:
    """
    The complete chain from bottom to top in which every step adjoins the least
    vector of top not yet covered. Each intermediate space is then ≺_q-minimal
    between its neighbours and the adjoined vectors increase strictly.
    """
    spaces = [bottom]
    current = bottom
    for x in greedy_minima(bottom, top, order):
        current = subspace(top.field, top.n, current.rows + (x,))
        spaces.append(current)
    return Chain(tuple(spaces))


def complete_chains(bottom: Subspace, top: Subspace) -> List[Chain]:
    """Every complete chain from bottom to top (all flags of top/bottom)."""
    if not contains(top, bottom):
        raise NotNested(f"{bottom} is not contained in {top}")
    if bottom.dim == top.dim:
        return [Chain((bottom,))]
    out = []
    for w in enumerate_between(bottom, top, bottom.dim + 1):
        for tail in complete_chains(w, top):
            out.append(Chain((bottom,) + tail.spaces))
    return out


########################################################
# LOCAL MINIMALITY
########################################################
def min_between(a: Subspace, b: Subspace, k: int, order: Optional[Tuple[int, ...]] = None) -> Subspace:
    """The definitional ≺_q-minimum of the k-dimensional spaces between a and b."""
    return min_q(enumerate_between(a, b, k), order)


def _check_interior(c: Chain, i: int) -> None:
    if not c.is_complete:
        raise ProfileMismatch("local minimality is defined on complete chains")
    if not 0 < i < len(c) - 1:
        raise BadIndex(f"index {i} is not interior to a chain of length {len(c)}")


def is_locally_min(c: Chain, i: int, method: str = "enumerate", order: Optional[Tuple[int, ...]] = None) -> bool:
    """
    True iff c[i] is the ≺_q-minimum of the spaces strictly between c[i-1] and c[i+1].

    method="enumerate" sorts every candidate; method="greedy" checks whether c[i]
    contains min(c[i+1] minus c[i-1]), which is the same condition by the
    greedy-refinement lemma.
    """
    _check_interior(c, i)
    lo, mid, hi = c[i - 1], c[i], c[i + 1]
    if method == "enumerate":
        return min_between(lo, hi, mid.dim, order) == mid
    if method == "greedy":
        return contains_vec(mid, min_vector_of_difference(hi, lo, order))
    raise BadArgs(f"unknown method '{method}'")


def contains_min_vector(c: Chain, i: int) -> bool:
    """True iff c[i] contains the minimum nonzero vector of c[i+1]."""
    _check_interior(c, i)
    return contains_vec(c[i], min_nonzero_vector(c[i + 1]))


def no_interior_min(c: Chain, method: str = "vector", order: Optional[Tuple[int, ...]] = None) -> bool:
    """
    The chain-level condition: no interior space is locally minimal.

    method="enumerate" applies is_locally_min at every interior index;
    method="vector" asks that no c[k] contain the minimum nonzero vector of
    c[k+1]. Both agree on every complete chain starting at the zero subspace.
    """
    interior = range(1, len(c) - 1)
    if method == "vector":
        return not any(contains_min_vector(c, k) for k in interior)
    return not any(is_locally_min(c, k, method, order) for k in interior)

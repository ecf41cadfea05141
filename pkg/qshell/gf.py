"""
gf.py

Exact arithmetic in F_p and F_{p^e}, plus the fixed total order on field
elements and its lexicographic extension to vectors.

Contains:
- FieldSpec / field_new / parse_field_spec / format_field_spec
- FieldElement and the module-level add / sub / mul / inv / neg helpers
- FieldVector with elem_cmp / vec_cmp
- Arith: the int-level tables every hot loop in vecspace goes through

Elements are stored as their integer rep: the base-p digits of the polynomial
representative, c0 least significant. This is the same integer convention galois
uses, so the galois field class for a spec is the ground truth the tables are
built from.
"""

import logging
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import List, Sequence, Tuple

import galois
import numpy as np

from qshell import GLOBALS as g
from qshell.errors import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NonPrime,
    ParseError,
    ReducibleModulus,
    UnsupportedSize,
)

logger = logging.getLogger(__name__)

# Below this size a full addition table is cheaper than digit-wise addition.
_ADD_TABLE_LIMIT = 256


########################################################
# FIELD SPEC
########################################################
@dataclass(frozen=True)
class FieldSpec:
    """
    A validated finite field F_q, q = p^e.

    modulus holds the coefficients of the monic modulus polynomial, lowest
    degree first, so X^4 + X + 1 is (1, 1, 0, 0, 1). For e = 1 the modulus is
    the implicit X, i.e. (0, 1).
    """
    p: int
    e: int
    modulus: Tuple[int, ...] = dc_field(default=(0, 1))

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __str__(self) -> str:
        return format_field_spec(self)


def field_new(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """
    Validates (p, e, modulus) and returns a FieldSpec.

    :param p: the characteristic, must be prime.
    :param e: the extension degree, >= 1.
    :param modulus: coefficient list of a monic degree-e polynomial over F_p,
        lowest degree first. Ignored (and optional) for e = 1.
    :raises NonPrime, ReducibleModulus, UnsupportedSize:
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise NonPrime(f"characteristic {p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise UnsupportedSize(f"extension degree must be a positive integer, got {e}")
    if p ** e > g.MAX_FIELD_SIZE:
        logger.warning("Rejected field of size %d^%d (limit %d)", p, e, g.MAX_FIELD_SIZE)
        raise UnsupportedSize(f"q = {p}^{e} exceeds the desk-scale limit {g.MAX_FIELD_SIZE}")

    if e == 1:
        return FieldSpec(p, 1, (0, 1))

    if modulus is None:
        raise ReducibleModulus(f"an explicit degree-{e} modulus is required for gf({p}^{e})")
    coeffs = tuple(int(c) % p for c in modulus)
    # trim trailing zeros so degree is honest
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) - 1 != e or coeffs[-1] != 1:
        raise ReducibleModulus(f"modulus {_poly_to_str(coeffs, 'x')} is not monic of degree {e}")

    poly = galois.Poly(list(reversed(coeffs)), field=galois.GF(p))
    if not poly.is_irreducible():
        raise ReducibleModulus(f"modulus {_poly_to_str(coeffs, 'x')} is reducible over F_{p}")

    spec = FieldSpec(p, e, coeffs)
    logger.debug("Validated field %s", spec)
    return spec


########################################################
# TEXT SYNTAX: gf(p) | gf(p^e):<modulus>
########################################################
_FIELD_RE = re.compile(r"^\s*gf\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?::\s*(.+?))?\s*$", re.IGNORECASE)
_TERM_RE = re.compile(r"^(\d*)\*?(?:([a-z])(?:\^(\d+))?)?$")


def parse_poly(text: str, var: str, p: int) -> Tuple[int, ...]:
    """
    Parses a polynomial such as 'x^4+x+1' or 'a^3 + a + 1' into a coefficient
    tuple over F_p, lowest degree first. A bare integer is a constant.
    """
    cleaned = text.replace(" ", "").lower()
    if not cleaned:
        raise ParseError("empty polynomial")
    cleaned = cleaned.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for raw_term in cleaned.split("+"):
        if raw_term == "":
            continue
        sign = 1
        term = raw_term
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _TERM_RE.match(term)
        if not m or (m.group(2) and m.group(2) != var) or term == "":
            raise ParseError(f"cannot parse term '{raw_term}' of '{text}' in variable '{var}'")
        num, sym, exp = m.groups()
        coeff = int(num) if num else 1
        if sym:
            degree = int(exp) if exp else 1
        else:
            if not num:
                raise ParseError(f"cannot parse term '{raw_term}' of '{text}'")
            degree = 0
        coeffs[degree] = (coeffs.get(degree, 0) + sign * coeff) % p
    if not coeffs:
        return (0,)
    top = max(coeffs)
    out = tuple(coeffs.get(d, 0) for d in range(top + 1))
    while len(out) > 1 and out[-1] == 0:
        out = out[:-1]
    return out


def _poly_to_str(coeffs: Sequence[int], var: str) -> str:
    terms = []
    for degree in range(len(coeffs) - 1, -1, -1):
        c = coeffs[degree]
        if c == 0:
            continue
        if degree == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            tail = var if degree == 1 else f"{var}^{degree}"
            terms.append(head + tail)
    return "+".join(terms) if terms else "0"


def parse_field_spec(text: str) -> FieldSpec:
    """
    Usage: gf(p) | gf(p^e):<modulus>

    e.g. 'gf(2)', 'gf(3)', 'gf(2^4):x^4+x+1'.
    """
    m = _FIELD_RE.match(text or "")
    if not m:
        raise ParseError(f"bad field spec '{text}' (expected gf(p) or gf(p^e):<modulus>)")
    p = int(m.group(1))
    e = int(m.group(2)) if m.group(2) else 1
    mod_text = m.group(3)
    if e == 1:
        return field_new(p, 1)
    if not mod_text:
        raise ParseError(f"field spec '{text}' needs a modulus after ':'")
    return field_new(p, e, parse_poly(mod_text, "x", p))


def format_field_spec(spec: FieldSpec) -> str:
    if spec.e == 1:
        return f"gf({spec.p})"
    return f"gf({spec.p}^{spec.e}):{_poly_to_str(spec.modulus, 'x')}"


def element_from_poly(spec: FieldSpec, coeffs: Sequence[int]) -> int:
    """Encodes a coefficient list (low degree first) as an integer rep, reducing mod the modulus."""
    arith = arith_for(spec)
    rep = 0
    power = 1  # rep of x^d
    x_rep = spec.p if spec.e > 1 else 0
    for c in coeffs:
        rep = arith.add(rep, arith.mul(c % spec.p, power))
        power = arith.mul(power, x_rep) if spec.e > 1 else 0
    return rep


def element_to_poly(spec: FieldSpec, rep: int, var: str = "a") -> str:
    digits = []
    for _ in range(spec.e):
        digits.append(rep % spec.p)
        rep //= spec.p
    return _poly_to_str(digits, var)


def parse_element(spec: FieldSpec, text: str, var: str = "a") -> int:
    """An element written as an integer rep ('11') or a polynomial in var ('a^3+a+1')."""
    token = text.strip()
    if re.fullmatch(r"\d+", token):
        rep = int(token)
        if rep >= spec.q:
            raise ParseError(f"element rep {rep} out of range for {spec}")
        return rep
    return element_from_poly(spec, parse_poly(token, var, spec.p))


########################################################
# INT-LEVEL ARITHMETIC TABLES
########################################################
class Arith:
    """
    Integer-rep arithmetic for one FieldSpec. Built once per field and cached.

    Multiplication goes through log/antilog tables taken from galois; addition is
    XOR in characteristic 2, a table for small fields, digit-wise otherwise.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.q = spec.q
        self.gf = galois_field(spec)

        # 1) log / antilog tables from a primitive element
        alpha = self.gf.primitive_element
        powers = alpha ** np.arange(self.q - 1)
        self.exp: List[int] = [int(v) for v in powers]
        self.log: List[int] = [0] * self.q
        for i, v in enumerate(self.exp):
            self.log[v] = i

        # 2) addition
        self._add_table = None
        if self.p != 2 and spec.e > 1 and self.q <= _ADD_TABLE_LIMIT:
            a = self.gf(np.arange(self.q))
            self._add_table = [[int(v) for v in (a + self.gf(x))] for x in range(self.q)]
        self._neg = [self._neg_slow(x) for x in range(self.q)] if self.q <= 4096 else None

        logger.debug("Built arithmetic tables for %s", spec)

    # digit helpers for p odd, e > 1
    def _digits(self, x: int) -> List[int]:
        out = []
        for _ in range(self.spec.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        rep = 0
        for d in reversed(ds):
            rep = rep * self.p + d
        return rep

    def _neg_slow(self, x: int) -> int:
        if self.p == 2:
            return x
        if self.spec.e == 1:
            return (-x) % self.p
        return self._undigits([(-d) % self.p for d in self._digits(x)])

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.spec.e == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.spec.e == 1:
            return (a * b) % self.p
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.spec}")
        if self.spec.e == 1:
            return pow(a, -1, self.p)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def nonzero(self) -> range:
        return range(1, self.q)


@lru_cache(maxsize=None)
def galois_field(spec: FieldSpec):
    """The galois FieldArray class for spec."""
    if spec.e == 1:
        return galois.GF(spec.p)
    poly = galois.Poly(list(reversed(spec.modulus)), field=galois.GF(spec.p))
    return galois.GF(spec.p ** spec.e, irreducible_poly=poly)


@lru_cache(maxsize=None)
def arith_for(spec: FieldSpec) -> Arith:
    return Arith(spec)


########################################################
# ELEMENTS
########################################################
@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.field.q:
            raise FieldMismatch(f"rep {self.rep} is not an element of {self.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return add(self, neg(other))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, inv(other))

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __lt__(self, other: "FieldElement") -> bool:
        return elem_cmp(self, other) < 0

    def __str__(self) -> str:
        return str(self.rep)


def element(spec: FieldSpec, rep: int) -> FieldElement:
    return FieldElement(spec, rep)


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"elements from {a.field} and {b.field}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(a.field, arith_for(a.field).add(a.rep, b.rep))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(a.field, arith_for(a.field).mul(a.rep, b.rep))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, arith_for(a.field).neg(a.rep))


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, arith_for(a.field).inv(a.rep))


def elem_cmp(a: FieldElement, b: FieldElement) -> int:
    """
    The fixed total order on F_q: natural order of the integer rep, which puts
    0 first and 1 second. Returns -1, 0 or 1.
    """
    _same_field(a, b)
    return (a.rep > b.rep) - (a.rep < b.rep)


########################################################
# VECTORS
########################################################
@dataclass(frozen=True)
class FieldVector:
    field: FieldSpec
    coords: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __lt__(self, other: "FieldVector") -> bool:
        return vec_cmp(self, other) < 0

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


def vector(spec: FieldSpec, coords: Sequence[int]) -> FieldVector:
    return FieldVector(spec, tuple(int(c) for c in coords))


def vec_cmp(u: FieldVector, v: FieldVector) -> int:
    """
    Lexicographic extension of the element order: the first coordinate where
    u and v differ decides.
    """
    if u.field != v.field:
        raise FieldMismatch(f"vectors over {u.field} and {v.field}")
    if u.n != v.n:
        raise DimensionMismatch(f"vectors of length {u.n} and {v.n}")
    for a, b in zip(u.coords, v.coords):
        if a != b:
            return -1 if a < b else 1
    return 0


def unit_vector(spec: FieldSpec, n: int, i: int) -> FieldVector:
    """e_i with 1-based i."""
    coords = [0] * n
    coords[i - 1] = 1
    return FieldVector(spec, tuple(coords))


def admissible_permutation(spec: FieldSpec) -> Tuple[int, ...]:
    """
    An alternative admissible element order: 0 and 1 keep their places and the
    remaining reps are reversed. rank[rep] gives the position of rep.
    """
    order = [0, 1] + list(range(spec.q - 1, 1, -1))
    rank = [0] * spec.q
    for pos, rep in enumerate(order):
        rank[rep] = pos
    return tuple(rank)

"""Generalized AG codes over GF(q)(x) with locality, and the concatenated baseline.

A code ``C(P_1, ..., P_s : m*P_inf : C_1, ..., C_s)`` maps a polynomial f of
degree <= m to the inner encodings of its residues ``f mod P_i``. Each block
of coordinates is a codeword of one inner code, so any symbol can be repaired
inside its block from at most ``deg P_i`` others.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import bounds
from .field import FieldSpec, field_create, gf, prime_power
from .function_field import (
    Place,
    Polynomial,
    enumerate_places,
    product,
    residue_at_place,
    riemann_roch_basis,
)
from .linear import (
    BudgetExceeded,
    CertificationError,
    CodeError,
    DEFAULT_BUDGET,
    LinearCode,
    RecoveryError,
    distance_bounds,
    encode,
    information_set_recover,
    min_distance_exhaustive,
    parity_check_code,
    rank,
    rs_code,
)


class LocalityError(RuntimeError):
    """A coordinate has no recovery set inside its block."""


@dataclass(eq=False)
class GagLrcCode:
    base: LinearCode
    places: tuple[Place, ...]
    divisor_degree: int
    inner: tuple[LinearCode, ...]
    blocks: tuple[tuple[int, int], ...]  # (start, length)
    g0: tuple[tuple[tuple[int, ...], ...], ...]  # k rows x s residues
    g1: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def locality(self) -> int:
        return max(p.degree for p in self.places)

    def block_of(self, index: int) -> int:
        for b, (start, length) in enumerate(self.blocks):
            if start <= index < start + length:
                return b
        raise IndexError(f"coordinate {index} outside a code of length {self.n}")

    def __repr__(self) -> str:
        return f"GagLrcCode([{self.n}, {self.k}] over {self.field!r}, r={self.locality}, s={len(self.places)})"


def build_gag_lrc(
    field: FieldSpec,
    places: Sequence[Place],
    divisor_degree: int,
    inner: Sequence[LinearCode],
) -> GagLrcCode:
    """Assemble the generator matrix in three stages.

    1. ``g0``: residues of the monomials ``1, x, ..., x^m`` at each place.
    2. ``g1``: each residue flattened into ``deg P_i`` columns over GF(q).
    3. each block's column group multiplied by its inner generator.
    """
    places = tuple(places)
    inner = tuple(inner)
    if not places:
        raise CodeError("need at least one place")
    if len(inner) != len(places):
        raise CodeError(f"{len(places)} places but {len(inner)} inner codes")
    if len(set(places)) != len(places):
        raise CodeError("places must be distinct")
    for P, C in zip(places, inner):
        if P.is_infinite:
            raise CodeError("the infinite place carries the divisor and cannot be evaluated")
        if P.poly.field != field or C.field != field:
            raise CodeError("places and inner codes must be over the code's field")
        if C.k != P.degree:
            raise CodeError(f"inner code dimension {C.k} != place degree {P.degree} for {P}")
        if C.n <= P.degree:
            raise CodeError(f"inner code length {C.n} must exceed place degree {P.degree}")
    total = sum(P.degree for P in places)
    if divisor_degree < 0:
        raise CodeError("divisor degree must be non-negative")
    if divisor_degree >= total:
        raise CodeError(
            f"divisor degree {divisor_degree} >= total place degree {total}: evaluation not injective"
        )

    basis = riemann_roch_basis(field, divisor_degree)
    g0 = tuple(tuple(residue_at_place(f, P) for P in places) for f in basis)
    g1 = np.array([[c for res in row for c in res] for row in g0], dtype=np.int64)

    cols, blocks = [], []
    offset = start = 0
    for P, C in zip(places, inner):
        group = g1[:, offset : offset + P.degree]
        cols.append(field.matmul(group, C.gen))
        blocks.append((start, C.n))
        offset += P.degree
        start += C.n
    gen = np.concatenate(cols, axis=1)
    base = LinearCode(field, gen, name=f"GAG(s={len(places)}, m={divisor_degree})")
    return GagLrcCode(base, places, divisor_degree, inner, tuple(blocks), g0, g1)


# -- repair and locality -------------------------------------------------------------


def repair_symbol(code: GagLrcCode, word: Sequence[int | None], erased_index: int) -> tuple[int, list[int]]:
    """Rebuild ``word[erased_index]`` from symbols of its own block.

    Returns the symbol and the 0-based positions read.
    """
    if len(word) != code.n:
        raise CodeError(f"word has length {len(word)}, expected {code.n}")
    b = code.block_of(erased_index)
    start, length = code.blocks[b]
    local = [None if start + i == erased_index else word[start + i] for i in range(length)]
    try:
        msg, used = information_set_recover(code.inner[b], local)
    except RecoveryError as e:
        raise LocalityError(f"block {b}: {e}") from e
    symbol = int(encode(code.inner[b], msg)[erased_index - start])
    return symbol, [start + u for u in used]


def _smallest_recovery_set(C: LinearCode, j: int) -> list[int] | None:
    F = C.field
    others = [i for i in range(C.n) if i != j]
    for size in range(1, C.k + 1):
        for S in itertools.combinations(others, size):
            cols = list(S)
            if rank(F, C.gen[:, cols]) == rank(F, C.gen[:, cols + [j]]):
                return cols
    return None


def recovery_sets(code: GagLrcCode) -> list[list[int]]:
    """A smallest in-block recovery set (0-based) for every coordinate."""
    out = []
    for b, (start, length) in enumerate(code.blocks):
        for j in range(length):
            S = _smallest_recovery_set(code.inner[b], j)
            if S is None:
                raise LocalityError(f"coordinate {start + j} cannot be recovered within its block")
            out.append([start + i for i in S])
    return out


def verify_locality(code: GagLrcCode) -> int:
    """Certified locality upper bound: the largest smallest in-block recovery set."""
    return max(len(S) for S in recovery_sets(code))


# -- the optimal family --------------------------------------------------------------


def build_optimal_q_family(q: int) -> tuple[GagLrcCode, np.ndarray]:
    """All degree-2 places, ``(q^2-q-2) P_inf`` and RS_q(3,2) inner codes.

    Also returns the message of a weight-3 codeword: the coefficients of
    the product of every place polynomial but the last. That product is constant
    and nonzero modulo the last place, so only one block is nonzero.
    """
    if q < 3:
        raise CodeError("the family needs q >= 3")
    F = gf(q)
    places = enumerate_places(F, 2)
    t = len(places)
    rs = rs_code(F, F.elements()[:3], 2)
    code = build_gag_lrc(F, places, q * q - q - 2, [rs] * t)
    f = product([P.poly for P in places[:-1]], F)
    witness = f.padded(code.k)
    return code, witness


# -- concatenation ---------------------------------------------------------------------


def build_concatenated(outer: LinearCode, inner: LinearCode) -> LinearCode:
    """Concatenate an outer code over GF(p^r) with an inner [n', r] code over GF(p).

    Outer symbols are expanded in the polynomial basis ``{1, x, ..., x^(r-1)}``
    of GF(p^r) and each expansion is inner-encoded. The generator has one row
    per (outer row, basis element) pair.
    """
    Fo, Fi = outer.field, inner.field
    if Fi.m != 1 or Fo.p != Fi.p:
        raise CodeError(f"field-tower mismatch: outer {Fo!r} over inner {Fi!r} (inner must be the prime field)")
    if inner.k != Fo.m:
        raise CodeError(f"inner dimension {inner.k} must equal the extension degree {Fo.m}")
    rows = []
    for row in outer.gen:
        for j in range(Fo.m):
            symbols = Fo.mul(Fo.p**j, row)  # x^j * row
            expanded = Fo.digits(symbols)  # (n, r) over GF(p)
            rows.append(Fi.matmul(expanded, inner.gen).reshape(-1))
    return LinearCode(Fi, np.array(rows, dtype=np.int64), name=f"Concat({outer.name}, {inner.name})")


def concatenated_code(p: int, r: int, s: int, k0: int) -> LinearCode:
    """Genus-0 concatenated code: outer RS(s, k0) over GF(p^r), inner parity [r+1, r, 2]."""
    Fo = field_create(p, r)
    if not 1 <= k0 <= s <= Fo.q:
        raise CodeError(f"need 1 <= k0 <= s <= {Fo.q}, got s={s}, k0={k0}")
    outer = rs_code(Fo, Fo.elements()[:s], k0)
    return build_concatenated(outer, parity_check_code(field_create(p), r))


# -- parameter reports ---------------------------------------------------------------


@dataclass
class ParamReport:
    n: int
    k: int
    r: int
    d_design: int
    d_singleton: int
    defect: int
    rate_bound: Fraction | None
    d_actual: int | None = None
    d_method: str = "design"
    pessimistic: bool = True

    def line(self) -> str:
        d = self.d_actual if self.d_actual is not None else self.d_design
        return f"n={self.n} k={self.k} d={d} r={self.r} defect={self.defect}"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "d_design": self.d_design,
            "d_actual": self.d_actual,
            "d_method": self.d_method,
            "d_singleton": self.d_singleton,
            "defect": self.defect,
            "defect_pessimistic": self.pessimistic,
            "rate_bound": None if self.rate_bound is None else str(self.rate_bound),
        }


def _report(n, k, r, d_design, rate_bound, d_actual=None, method="design") -> ParamReport:
    d_singleton = bounds.singleton_lrc(n, k, r)
    if d_design > d_singleton:
        raise CodeError(f"design distance {d_design} exceeds Singleton-like bound {d_singleton}")
    if d_actual is not None:
        return ParamReport(n, k, r, d_design, d_singleton, bounds.defect(n, k, d_actual, r),
                           rate_bound, d_actual, method, pessimistic=False)
    return ParamReport(n, k, r, d_design, d_singleton, d_singleton - d_design, rate_bound)


def concatenated_params(q: int, r: int, s: int, g: int, k0: int) -> ParamReport:
    """Concatenated construction: ``n=(r+1)s``, ``k=r*k0``, ``d >= 2(s-k0-g+1)``."""
    prime_power(q)
    if not g - 1 < k0 < s - g + 1:
        raise CodeError(f"need g-1 < k0 < s-g+1, got g={g}, k0={k0}, s={s}")
    n, k = (r + 1) * s, r * k0
    d = 2 * (s - k0 - g + 1)
    delta = Fraction(d, n)
    rate = Fraction(r, r + 1) - Fraction(r, 2) * delta - Fraction(r * (g - 1), n)
    return _report(n, k, r, d, rate)


def gag_params(q: int, r: int, s: int, g: int, k: int) -> ParamReport:
    """Generalized-AG construction with parity inner codes: ``d >= 2(s - floor((k+g-1)/r))``."""
    prime_power(q)
    if not g - 1 < k < r * s - g + 1:
        raise CodeError(f"need g-1 < k < rs-g+1, got g={g}, k={k}, r={r}, s={s}")
    n = (r + 1) * s
    d = 2 * (s - (k + g - 1) // r)
    delta = Fraction(d, n)
    rate = Fraction(r, r + 1) - Fraction(r, 2) * delta - Fraction(g - 1, n)
    return _report(n, k, r, d, rate)


def _inner_distance(C: LinearCode) -> int:
    if C.d_exact is None:
        min_distance_exhaustive(C)
    return C.d_exact


def design_distance(code: GagLrcCode) -> int:
    """Guaranteed distance: f can vanish on places of total degree <= m, the rest contribute d_i each.

    Minimizes the surviving inner distances over every vanishing set (0/1
    knapsack on place degree); for uniform degree r and inner distance d'
    this is ``d' (s - floor(m / r))``.
    """
    m = code.divisor_degree
    ds = [_inner_distance(C) for C in code.inner]
    best = [0] * (m + 1)  # max removable distance with degree budget
    for P, d in zip(code.places, ds):
        for cap in range(m, P.degree - 1, -1):
            best[cap] = max(best[cap], best[cap - P.degree] + d)
    return sum(ds) - best[m]


def gag_report(code: GagLrcCode, budget: int = DEFAULT_BUDGET, witness=None) -> ParamReport:
    """Parameters of a built code; distance by exhaustive search, else certification, else design."""
    d_design = design_distance(code)
    n, k, r = code.n, code.k, code.locality
    d_actual, method = None, "design"
    try:
        d_actual = min_distance_exhaustive(code.base, budget=budget)
        method = "exhaustive"
    except BudgetExceeded:
        for claim in (3, 2):
            try:
                lo, hi = distance_bounds(code.base, claim, witness)
            except CertificationError:
                continue
            if lo == hi:
                d_actual, method = lo, "certified"
            break
    rate = None
    if all(P.degree == r for P in code.places) and all(C.n == r + 1 for C in code.inner):
        delta = Fraction(d_actual if d_actual is not None else d_design, n)
        rate = Fraction(r, r + 1) - Fraction(r, 2) * delta + Fraction(1, n)
    return _report(n, k, r, d_design, rate, d_actual, method)


def table1_rows(budget: int = DEFAULT_BUDGET) -> list[tuple[int, int, int, int]]:
    """(n, k, d, defect) for the three degree-2 places of GF(3)(x) with RS(3,2) blocks."""
    F = gf(3)
    places = enumerate_places(F, 2)
    rs = rs_code(F, [0, 1, 2], 2)
    rows = []
    for m in (2, 3, 4):
        code = build_gag_lrc(F, places, m, [rs] * len(places))
        d = min_distance_exhaustive(code.base, budget=budget)
        rows.append((code.n, code.k, d, bounds.defect(code.n, code.k, d, 2)))
    return rows

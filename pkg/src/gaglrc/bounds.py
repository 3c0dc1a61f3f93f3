"""Closed-form and numerically minimized bounds for locally recoverable codes.

Rational formulas return :class:`fractions.Fraction` whenever every input is
rational; real-valued results (odd-order Drinfeld-Vladut over a non-square
field, the GV-type bound) are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.optimize import minimize_scalar

from .field import prime_power

Number = Fraction | float


class BoundError(ValueError):
    """A bound's hypotheses are violated."""


@dataclass
class BoundReport:
    """One evaluated bound: ``value`` plus anything a reader should not miss."""

    name: str
    inputs: dict
    value: object
    flags: list[str] = field(default_factory=list)
    tag: str = ""
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "bound": self.name,
            "inputs": {k: _plain(v) for k, v in self.inputs.items()},
            "value": _plain(self.value),
            "flags": list(self.flags),
            "tag": self.tag,
            **{k: _plain(v) for k, v in self.extra.items()},
        }


def _plain(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.floating):
        return float(v)
    return v


def _q(x) -> Number:
    """Keep rationals exact."""
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


# -- Singleton-like bound and rate cap -------------------------------------------------


def singleton_lrc(n: int, k: int, r: int) -> int:
    """Largest distance allowed for an [n, k] code with locality r: ``n - k - ceil(k/r) + 2``."""
    if not 1 <= k <= n:
        raise BoundError(f"need 1 <= k <= n, got n={n}, k={k}")
    if r < 1:
        raise BoundError("locality must be >= 1")
    return n - k - (-(-k // r)) + 2


def defect(n: int, k: int, d: int, r: int) -> int:
    d_max = singleton_lrc(n, k, r)
    if d > d_max:
        raise BoundError(f"d={d} exceeds the Singleton-like maximum {d_max} for n={n}, k={k}, r={r}")
    return d_max - d


def rate_cap(r: int) -> Fraction:
    return Fraction(r, r + 1)


# -- GV-type bound -----------------------------------------------------------------------


def gv_objective(q: int, r: int, delta: float, s):
    """The bracketed expression minimized over ``s`` in the GV-type bound."""
    s = np.asarray(s, dtype=float)
    inner = (1 + (q - 1) * s) ** (r + 1) + (q - 1) * (1 - s) ** (r + 1)
    with np.errstate(divide="ignore"):
        log_s = np.where(s > 0, np.log(np.where(s > 0, s, 1.0)), -np.inf)
    tail = np.where(delta == 0, 0.0, -delta * log_s)
    return (np.log(inner) / (r + 1) + tail) / math.log(q)


@dataclass(frozen=True)
class GVResult:
    value: float
    s_min: float
    raw: float
    clamped: bool


def gv_lrc_rate(q: int, r: int, delta: float, grid: int = 10_000, tol: float = 1e-9) -> GVResult:
    """GV-type lower bound on the rate of q-ary codes with locality r and relative distance delta.

    The minimum over ``s`` is located on a ``grid``-point grid over (1e-9, 1]
    and refined by a bounded scalar search in the neighbouring cells. At
    ``delta == 0`` the infimum is the ``s -> 0`` limit, ``1/(r+1)``. Negative
    values are clamped to zero and flagged.
    """
    if not 0 <= delta <= 1:
        raise BoundError("delta must lie in [0, 1]")
    prime_power(q)
    if r < 1:
        raise BoundError("locality must be >= 1")
    if delta == 0:
        # objective increases from 1/(r+1) at s -> 0
        best_s, best = 0.0, 1.0 / (r + 1)
    else:
        lo_end = 1e-9
        ss = np.linspace(lo_end, 1.0, grid)
        vals = gv_objective(q, r, delta, ss)
        i = int(np.argmin(vals))
        lo, hi = ss[max(i - 1, 0)], ss[min(i + 1, grid - 1)]
        res = minimize_scalar(
            lambda s: float(gv_objective(q, r, delta, s)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": tol},
        )
        best_s, best = float(ss[i]), float(vals[i])
        if res.fun < best:
            best_s, best = float(res.x), float(res.fun)
    raw = 1.0 - best
    return GVResult(value=max(raw, 0.0), s_min=best_s, raw=raw, clamped=raw <= 0)


# -- Drinfeld-Vladut and the Garcia-Stichtenoth tower --------------------------------------


def dv_order_r(q: int, r: int) -> Number:
    """``(q^(r/2) - 1) / r``; exact when ``q^r`` is a perfect square."""
    if r < 1:
        raise BoundError("order must be >= 1")
    prime_power(q)
    root = math.isqrt(q**r)
    if root * root == q**r:
        return Fraction(root - 1, r)
    return (q ** (r / 2) - 1) / r


@dataclass(frozen=True)
class TowerParams:
    genus_upper: int
    b1_lower: int
    ratio_lower: int


def gs_tower_params(q: int, ell: int) -> TowerParams:
    """Genus cap, rational-place floor and their ratio floor for level ``ell`` of the tower over GF(q^2)."""
    prime_power(q)
    if ell < 3:
        raise BoundError("tower level must be >= 3")
    return TowerParams(
        genus_upper=q**ell + q ** (ell - 1),
        b1_lower=(q * q - 1) * q ** (ell - 1) + 2 * q,
        ratio_lower=q - 1,
    )


def descended_tower_ratio(q: int, ell: int) -> Fraction:
    """Floor on (places of degree 2) / genus at level ``ell`` of the tower descended to GF(q)."""
    prime_power(q)
    if ell < 1:
        raise BoundError("tower level must be >= 1")
    return Fraction(q - 1, 2) - Fraction(q * q, q**ell + q ** (ell - 1))


def descended_tower_ratio_floor(q: int) -> Fraction:
    """Level-independent floor ``(q-1)/2 - 1/q``, valid from level 3 on."""
    return Fraction(q - 1, 2) - Fraction(1, q)


# -- asymptotic rate floors ------------------------------------------------------------------


def concatenated_rate_floor(q: int, r: int, delta) -> Number:
    """Rate floor of the concatenated family over the optimal tower on GF(q^r)."""
    frac = Fraction(r, r + 1)
    root = math.isqrt(q**r)
    if root * root != q**r:
        raise BoundError(f"q^r = {q}^{r} is not a square")
    if root - 1 < 2:
        raise BoundError(f"tower ratio q^(r/2) - 1 = {root - 1} is below 2")
    return frac * (1 - Fraction(r + 1, 2) * _q(delta) - Fraction(1, root - 1))


def gag_rate_floor(r: int, delta, b_r) -> Number:
    """Rate floor of the generalized-AG family when (degree-r places)/genus >= r * b_r >= 2."""
    b_r = _q(b_r)
    if r * b_r < 2:
        raise BoundError(f"r * b_r = {r * b_r} is below 2")
    return Fraction(r, r + 1) * (1 - Fraction(r + 1, 2) * _q(delta) - 1 / (r * b_r))


def locality2_rate_floor(q: int, delta) -> Number:
    """Explicit locality-2 floor from the descended tower: ``2/3 (1 - q/(q^2-q-2)) - delta``."""
    if q <= 3:
        raise BoundError("the locality-2 family needs q > 3")
    return Fraction(2, 3) * (1 - Fraction(q, q * q - q - 2)) - _q(delta)


# A commonly quoted value for q = 4, r = 2 is 1/3 - delta; evaluating the
# concatenated floor gives 4/9 - delta. Report the formula, flag the mismatch.
REFERENCE_CONCAT_FLOOR = {(4, 2): Fraction(1, 3)}


def asymptotic_rates(q: int, r: int, delta=0, ell: int | None = None, b_r=None) -> BoundReport:
    """Evaluate every applicable asymptotic rate floor; violations are flagged, not raised."""
    prime_power(q)
    delta = _q(delta)
    values: dict[str, object] = {}
    flags: list[str] = []

    try:
        v = concatenated_rate_floor(q, r, delta)
        values["concatenated"] = v
        quoted = REFERENCE_CONCAT_FLOOR.get((q, r))
        if quoted is not None and v + delta != quoted:
            flags.append(
                f"concatenated: formula gives {v + delta} - delta, reference value is {quoted} - delta"
            )
    except BoundError as e:
        values["concatenated"] = None
        flags.append(f"concatenated: {e}")

    if b_r is None and r == 2 and q > 1:
        b_r = descended_tower_ratio_floor(q)
    if b_r is not None:
        try:
            values["generalized_ag"] = gag_rate_floor(r, delta, b_r)
        except BoundError as e:
            values["generalized_ag"] = None
            flags.append(f"generalized_ag: {e}")
    if r == 2:
        try:
            values["generalized_ag_locality2"] = locality2_rate_floor(q, delta)
        except BoundError as e:
            values["generalized_ag_locality2"] = None
            flags.append(f"generalized_ag_locality2: {e}")
        values["b2_floor"] = descended_tower_ratio_floor(q)
        if ell is not None:
            values["b2"] = descended_tower_ratio(q, ell)
    for key, v in values.items():
        if key in ("concatenated", "generalized_ag", "generalized_ag_locality2") and v is not None and v < 0:
            flags.append(f"{key}: vacuous (negative)")
    return BoundReport(
        name="asymptotic",
        inputs={"q": q, "r": r, "delta": delta, "ell": ell, "b_r": b_r},
        value=values,
        flags=flags,
        tag="asymptotic-rate-floors",
    )

"""The rational function field GF(q)(x): polynomials, places, L(m*P_inf)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import FieldError, FieldSpec, parse_element, render_element


class Polynomial:
    """Dense polynomial over a :class:`FieldSpec`, coefficients low degree first.

    Coefficients are element codes. Trailing zeros are stripped, so the zero
    polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        for c in cs:
            if not 0 <= c < field.q:
                raise FieldError(f"coefficient {c} out of range for {field!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff: int = 1) -> "Polynomial":
        return cls(field, [0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial) or other.field != self.field:
            raise FieldError("polynomials over different fields")

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=np.int64)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, self.field.add(self.padded(n), other.padded(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.field.neg(np.array(self.coeffs, dtype=np.int64)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, self.field.mul(np.array(self.coeffs, dtype=np.int64), c))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)
        F = self.field
        a = np.array(self.coeffs, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        outer = F.mul(a[:, None], b[None, :])
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i in range(len(a)):
            out[i : i + len(b)] = F.add(out[i : i + len(b)], outer[i])
        return Polynomial(F, out)

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = int(F.inv(other.coeffs[-1]))
        div = np.array(other.coeffs, dtype=np.int64)
        quot = [0] * max(len(rem) - d, 0)
        for shift in range(len(rem) - 1 - d, -1, -1):
            c = rem[shift + d]
            if c:
                f = int(F.mul(c, lead_inv))
                quot[shift] = f
                seg = np.array(rem[shift : shift + d + 1], dtype=np.int64)
                rem[shift : shift + d + 1] = [int(v) for v in F.sub(seg, F.mul(div, f))]
        return Polynomial(F, quot), Polynomial(F, rem[:d] if d > 0 else [])

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __call__(self, a: int) -> int:
        """Horner evaluation at a field element code."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = int(self.field.add(self.field.mul(acc, a), c))
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(int(self.field.inv(self.coeffs[-1])))

    def __str__(self) -> str:
        return render_polynomial(self)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pow_mod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial(base.field, [1])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test over GF(q)."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    F = f.field
    q = F.q
    x = Polynomial(F, [0, 1])

    def frob(k: int) -> Polynomial:
        # x^(q^k) mod f
        h = x
        for _ in range(k):
            h = _pow_mod(h, q, f)
        return h

    if not ((frob(n) - x) % f).is_zero():
        return False
    for ell in _prime_factors(n):
        if poly_gcd(f, frob(n // ell) - x).degree > 0:
            return False
    return True


@dataclass(frozen=True)
class Place:
    """A place of GF(q)(x): a monic irreducible (finite) or the infinite place."""

    poly: Polynomial | None = None

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, poly: Polynomial) -> "Place":
        if not poly.is_monic():
            raise FieldError(f"place polynomial {poly} is not monic")
        if not is_irreducible(poly):
            raise FieldError(f"place polynomial {poly} is reducible")
        return cls(poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self) -> str:
        return "P_inf" if self.poly is None else str(self.poly)


@dataclass(frozen=True)
class Divisor:
    """The divisor ``multiplicity * P_inf``; the only kind needed in genus 0."""

    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 0:
            raise ValueError("divisor multiplicity must be non-negative")

    @property
    def degree(self) -> int:
        return self.multiplicity

    @property
    def support(self) -> tuple[Place, ...]:
        return (Place.infinity(),) if self.multiplicity else ()


def enumerate_places(field: FieldSpec, r: int) -> list[Place]:
    """All places of degree ``r``, ordered by the code of their lower coefficients.

    For ``r == 1`` the infinite place is appended last.
    """
    if r < 1:
        raise ValueError("place degree must be >= 1")
    q = field.q
    places = []
    for low in range(q**r):
        coeffs = [(low // q**i) % q for i in range(r)] + [1]
        f = Polynomial(field, coeffs)
        if is_irreducible(f):
            places.append(Place(f))
    if r == 1:
        places.append(Place.infinity())
    return places


def riemann_roch_basis(field: FieldSpec, m: int) -> list[Polynomial]:
    """Monomial basis ``[1, x, ..., x^m]`` of L(m*P_inf)."""
    if m < 0:
        raise ValueError("divisor degree must be non-negative")
    return [Polynomial.monomial(field, i) for i in range(m + 1)]


def residue_at_place(f: Polynomial, place: Place) -> tuple[int, ...]:
    """Coefficients of ``f mod P`` in the basis ``{1, x, ..., x^(deg P - 1)}``."""
    if place.is_infinite:
        raise ValueError("evaluation at the infinite place is not supported")
    if f.field != place.poly.field:
        raise FieldError("polynomial and place are over different fields")
    rem = f % place.poly
    return tuple(int(c) for c in rem.padded(place.degree))


# -- text forms ------------------------------------------------------------------


def _coeff_sep(field: FieldSpec) -> str:
    # extension-field elements already contain commas
    return "," if field.m == 1 else ";"


def render_polynomial(f: Polynomial) -> str:
    """``"c0 + c1*x + c2*x^2"``, skipping zero terms."""
    F = f.field
    if f.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        cs = render_element(F, c)
        if F.m > 1:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)


def render_polynomial_compact(f: Polynomial) -> str:
    return _coeff_sep(f.field).join(render_element(f.field, c) for c in f.coeffs) or "0"


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?(x(?:\s*\^\s*(\d+))?)?$")


def parse_polynomial(field: FieldSpec, text: str) -> Polynomial:
    """Parse the compact form ``"c0,c1,..."`` or, over prime fields, ``"x^2+2*x+2"``.

    Compact coefficients are element renderings; over extension fields they
    are separated by ``;``.
    """
    text = text.strip()
    if "x" not in text:
        parts = [t for t in text.split(_coeff_sep(field)) if t.strip()]
        if not parts:
            raise FieldError(f"empty polynomial {text!r}")
        return Polynomial(field, [parse_element(field, t) for t in parts])
    if field.m > 1:
        raise FieldError("symbolic polynomial form is only supported over prime fields")
    coeffs: dict[int, int] = {}
    for raw in text.replace("-", "+-").split("+"):
        term = raw.replace(" ", "")
        if not term:
            continue
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        m = _TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise FieldError(f"cannot parse term {raw!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        deg = 0 if m.group(2) is None else int(m.group(3) or 1)
        coeffs[deg] = (coeffs.get(deg, 0) + sign * c) % field.p
    top = max(coeffs)
    return Polynomial(field, [coeffs.get(i, 0) for i in range(top + 1)])


def product(polys: Sequence[Polynomial], field: FieldSpec) -> Polynomial:
    out = Polynomial(field, [1])
    for f in polys:
        out = out * f
    return out

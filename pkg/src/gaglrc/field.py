"""Arithmetic in GF(p) and GF(p^m).

Elements are stored as integer codes ``c0 + c1*p + ... + c_{m-1}*p^(m-1)``
where ``(c0, ..., c_{m-1})`` is the coefficient vector of the element in the
polynomial basis ``{1, x, ..., x^(m-1)}`` modulo the field's modulus. Code
order is therefore the enumeration order: zero first, then 1, 2, ..., x, ...

All bulk operations accept numpy arrays of codes (or plain ints) and work
element-wise, so matrices over a field are just integer arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 2**16


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q = p**m``; raise if impossible."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


class FieldSpec:
    """The finite field GF(p^m) with a fixed modulus.

    Do not instantiate directly; use :func:`field_create`, which caches one
    instance per ``(p, m)``.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.m = m
        self.q = p**m
        # low degree first, monic, length m + 1; None for prime fields
        self.modulus = modulus
        q = self.q
        self._pw = p ** np.arange(m, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = (codes[:, None] // self._pw[None, :]) % p  # (q, m)
        self._neg = self._encode((-self._digits) % p)
        if m == 1:
            self._exp = self._log = None
            self._inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                self._inv[a] = pow(a, p - 2, p)
        else:
            self._build_log_tables()
            self._inv = np.zeros(q, dtype=np.int64)
            nz = codes[1:]
            self._inv[1:] = self._exp[(-self._log[nz]) % (q - 1)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    # -- code <-> coefficient vector -------------------------------------

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._pw

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors (last axis, length m) of the codes in ``a``."""
        return self._digits[np.asarray(a)]

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise FieldError(f"too many coefficients for {self!r}: {list(coeffs)}")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def _mul_digits(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        """Schoolbook product of two coefficient vectors modulo the modulus."""
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if c:
                for i in range(m + 1):
                    prod[d - m + i] = (prod[d - m + i] - c * self.modulus[i]) % p
        return prod[:m]

    def _build_log_tables(self) -> None:
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        for g in range(2, q):
            gd = list(self._digits[g])
            cur = [1] + [0] * (self.m - 1)
            seen = 0
            ok = True
            for i in range(q - 1):
                code = self.from_coeffs(cur)
                if i > 0 and code == 1:
                    ok = False
                    break
                exp[i] = code
                seen += 1
                cur = self._mul_digits(cur, gd)
            if ok and seen == q - 1:
                break
        else:  # pragma: no cover - every finite field has a generator
            raise FieldError(f"no primitive element found in {self!r}")
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.generator = g
        self._exp, self._log = exp, log

    # -- element-wise arithmetic on codes -----------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._encode((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        return self._neg[np.asarray(a)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.m == 1:
            return (a * b) % self.p
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a)
        if e < 0:
            a, e = self.inv(a), -e
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def sum(self, a, axis=None):
        """Field sum along ``axis``."""
        a = np.asarray(a)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.size else np.zeros(a.shape[:0], dtype=np.int64)
        d = self.digits(a)
        if axis is None:
            return self._encode(d.reshape(-1, self.m).sum(axis=0) % self.p)
        axis = axis % a.ndim
        return self._encode(d.sum(axis=axis) % self.p)

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field."""
        a = np.asarray(a)
        b = np.asarray(b)
        return self.sum(self.mul(a[:, :, None], b[None, :, :]), axis=1)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element from another field")
            return value
        if isinstance(value, str):
            return FieldElement(self, parse_element(self, value))
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        v = int(value)
        if not 0 <= v < self.q:
            raise FieldError(f"code {v} out of range for {self!r}")
        return FieldElement(self, v)


@dataclass(frozen=True)
class FieldElement:
    """A single element, for scalar work and display."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            # integers act through the prime subfield
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return render_element(self.field, self.value)


def ff_arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch ``op`` in {add, sub, mul, inv, pow}; ``b`` is the exponent for pow."""
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElement) or b.field != a.field:
        raise FieldError("operands must be elements of the same field")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)


def ff_enumerate(field: FieldSpec) -> list[FieldElement]:
    return [FieldElement(field, a) for a in range(field.q)]


# -- textual form ------------------------------------------------------------


def render_element(field: FieldSpec, code: int) -> str:
    """``"2"`` in prime fields, ``"c0,c1,..."`` (low degree first) otherwise."""
    if field.m == 1:
        return str(int(code))
    return ",".join(str(int(c)) for c in field.digits(code))


def parse_element(field: FieldSpec, text: str) -> int:
    parts = [t.strip() for t in text.strip().split(",")]
    try:
        coeffs = [int(t) for t in parts]
    except ValueError:
        raise FieldError(f"bad element {text!r}") from None
    if len(coeffs) != field.m:
        raise FieldError(f"element {text!r} needs {field.m} coefficient(s) in {field!r}")
    if any(not 0 <= c < field.p for c in coeffs):
        raise FieldError(f"element {text!r} has coefficients outside [0, {field.p})")
    return field.from_coeffs(coeffs)


# -- construction --------------------------------------------------------------


def _prime_poly_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p) by trial division.

    Tries every monic divisor of degree 1..deg/2; fine for the degrees a
    field of order <= 2**16 needs.
    """
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            div = [(low // p**i) % p for i in range(d)] + [1]
            rem = list(coeffs)
            for shift in range(deg - d, -1, -1):
                c = rem[shift + d]
                if c:
                    for i in range(d + 1):
                        rem[shift + i] = (rem[shift + i] - c * div[i]) % p
            if not any(rem[:d]):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``m`` over GF(p).

    Candidates ``c0 + c1 x + ... + x^m`` are ranked by the integer
    ``c0 + c1 p + ... + c_{m-1} p^(m-1)``, the same order as element codes.
    """
    for low in range(p**m):
        coeffs = tuple((low // p**i) % p for i in range(m)) + (1,)
        if _prime_poly_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> FieldSpec:
    """GF(p^m) with a deterministic modulus; repeated calls return the same object."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds supported maximum {MAX_ORDER}")
    modulus = least_irreducible(p, m) if m > 1 else None
    return FieldSpec(int(p), int(m), modulus)


def gf(q: int) -> FieldSpec:
    """Field of order ``q`` (a prime power)."""
    return field_create(*prime_power(q))

"""Linear codes over GF(q): construction, encoding, distance, erasure recovery.

Matrices are integer arrays of element codes (see :mod:`gaglrc.field`).
Messages are rows: ``codeword = message @ gen``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .field import FieldSpec

DEFAULT_BUDGET = 2**26
# rows folded into the precomputed span table; q**j rows of length n
_SPAN_TABLE_LIMIT = 2**16


class CodeError(ValueError):
    """Invalid code parameters or inputs."""


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the codeword budget."""


class CertificationError(RuntimeError):
    """A distance claim failed; ``positions`` are the dependent parity-check columns."""

    def __init__(self, claim: int, positions: tuple[int, ...]):
        self.claim = claim
        self.positions = positions
        super().__init__(
            f"cannot certify d >= {claim}: parity-check columns {list(positions)} are dependent"
        )


class RecoveryError(RuntimeError):
    """Erasure pattern leaves no information set, or the received word is inconsistent."""


# -- linear algebra ----------------------------------------------------------------


def rref(field: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise CodeError("expected a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = field.mul(A[r], field.inv(A[r, c]))
        factors = A[:, c].copy()
        factors[r] = 0
        A = field.sub(A, field.mul(factors[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(field: FieldSpec, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(field, M)[1])


def solve_left(field: FieldSpec, A, b) -> np.ndarray:
    """Solve ``x @ A = b`` for square invertible ``A``."""
    A = np.asarray(A, dtype=np.int64)
    k = A.shape[0]
    aug = np.concatenate([A.T, np.asarray(b, dtype=np.int64).reshape(k, 1)], axis=1)
    R, piv = rref(field, aug)
    if piv != list(range(k)):
        raise RecoveryError("matrix is singular")
    return R[:, k].copy()


def null_space(field: FieldSpec, M) -> np.ndarray:
    """Basis (rows) of ``{v : M @ v = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(field, M)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = field.neg(R[row, f])
    return basis


# -- codes -----------------------------------------------------------------------


@dataclass(eq=False)
class LinearCode:
    """A linear [n, k] code given by a full-rank k x n generator matrix."""

    field: FieldSpec
    gen: np.ndarray
    d_exact: int | None = None
    d_lower: int | None = None
    d_upper: int | None = None
    name: str = ""
    _parity: np.ndarray | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        g = np.array(self.gen, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] < 1 or g.shape[0] > g.shape[1]:
            raise CodeError(f"generator must be k x n with 1 <= k <= n, got shape {g.shape}")
        if g.min() < 0 or g.max() >= self.field.q:
            raise CodeError("generator entries outside the field")
        if rank(self.field, g) != g.shape[0]:
            raise CodeError("generator matrix does not have full row rank")
        g.setflags(write=False)
        self.gen = g
        if self.d_exact is not None:
            self.d_lower = self.d_upper = self.d_exact

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def __repr__(self) -> str:
        d = self.d_exact if self.d_exact is not None else "?"
        return f"LinearCode([{self.n}, {self.k}, {d}] over {self.field!r})"

    def parity_check(self) -> np.ndarray:
        """(n-k) x n parity-check matrix, columns in original coordinate order."""
        if self._parity is None:
            F = self.field
            R, piv = rref(F, self.gen)
            rest = [c for c in range(self.n) if c not in piv]
            # with columns permuted to piv + rest, G ~ [I | A] and H = [-A^T | I]
            H = np.zeros((len(rest), self.n), dtype=np.int64)
            A = R[:, rest]
            H[:, piv] = F.neg(A.T)
            H[:, rest] = np.eye(len(rest), dtype=np.int64)
            self._parity = H
        return self._parity


def weight(word) -> int:
    return int(np.count_nonzero(np.asarray(word)))


def rs_code(field: FieldSpec, eval_points: Sequence[int], k: int) -> LinearCode:
    """Reed-Solomon code with generator rows ``(a_j ** i)_j`` for ``i < k``."""
    pts = np.array([int(a) for a in eval_points], dtype=np.int64)
    if len(set(pts.tolist())) != len(pts):
        raise CodeError("evaluation points must be distinct")
    if not 1 <= k <= len(pts):
        raise CodeError(f"need 1 <= k <= n, got k={k}, n={len(pts)}")
    gen = np.stack([field.pow(pts, i) for i in range(k)])
    return LinearCode(field, gen, d_exact=len(pts) - k + 1, name=f"RS({len(pts)},{k})")


def parity_check_code(field: FieldSpec, r: int) -> LinearCode:
    """Single parity check [r+1, r, 2] code: generator ``[I_r | -1]``."""
    if r < 1:
        raise CodeError("parity code needs r >= 1")
    gen = np.zeros((r, r + 1), dtype=np.int64)
    gen[:, :r] = np.eye(r, dtype=np.int64)
    gen[:, r] = field.neg(1)
    return LinearCode(field, gen, d_exact=2, name=f"Parity({r + 1},{r})")


def encode(code: LinearCode, message) -> np.ndarray:
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (code.k,):
        raise CodeError(f"message length {msg.shape} does not match k={code.k}")
    if msg.size and (msg.min() < 0 or msg.max() >= code.field.q):
        raise CodeError("message entries outside the field")
    return code.field.matmul(msg[None, :], code.gen)[0]


# -- minimum distance --------------------------------------------------------------


def _span(field: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """All ``q ** len(rows)`` linear combinations of ``rows``; index 0 is the zero word."""
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=np.int64)
    elems = field.elements()
    for row in rows:
        scaled = field.mul(elems[:, None], row[None, :])  # (q, n)
        table = field.add(scaled[:, None, :], table[None, :, :]).reshape(-1, n)
    return table


def worker_count() -> int:
    env = os.environ.get("GAG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def min_distance_exhaustive(
    code: LinearCode, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> int:
    """Exact minimum distance by enumerating all ``q**k`` codewords.

    The message space is split as (leading rows) x (trailing rows): the span
    of the trailing rows is tabulated once and every leading combination is
    added to it as a block. Blocks are independent, so they are spread over
    ``workers`` threads.
    """
    F, k, n = code.field, code.k, code.n
    total = F.q**k
    if total > budget:
        raise BudgetExceeded(f"{F.q}^{k} = {total} codewords exceeds budget {budget}")
    j = k
    while j > 0 and F.q**j > _SPAN_TABLE_LIMIT:
        j -= 1
    table = _span(F, code.gen[k - j :])
    offsets = _span(F, code.gen[: k - j])

    def block_min(idx: range) -> int:
        best = n + 1
        for i in idx:
            w = np.count_nonzero(F.add(table, offsets[i][None, :]), axis=1)
            w = w[w > 0]  # full rank: only the zero message gives weight 0
            if w.size:
                best = min(best, int(w.min()))
            if best == 1:
                break
        return best

    workers = workers or worker_count()
    nblocks = len(offsets)
    if workers == 1 or nblocks == 1:
        d = block_min(range(nblocks))
    else:
        step = -(-nblocks // workers)
        chunks = [range(s, min(s + step, nblocks)) for s in range(0, nblocks, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            d = min(pool.map(block_min, chunks))
    code.d_exact = code.d_lower = code.d_upper = d
    return d


def _normalize_columns(field: FieldSpec, H: np.ndarray) -> np.ndarray:
    """Scale each nonzero column so its first nonzero entry is 1."""
    out = H.copy()
    for c in range(H.shape[1]):
        nz = np.nonzero(H[:, c])[0]
        if nz.size:
            out[:, c] = field.mul(H[:, c], field.inv(H[nz[0], c]))
    return out


def distance_bounds(
    code: LinearCode, claim_w: int, witness: Sequence[int] | None = None
) -> tuple[int, int]:
    """Certify ``d >= claim_w`` from parity-check columns; bound ``d`` above by a witness.

    ``claim_w`` is 2 (no zero column of H) or 3 (additionally no two columns
    proportional). The upper bound is the weight of ``encode(witness)`` when
    given, else the Singleton bound ``n - k + 1``.
    """
    if claim_w not in (2, 3):
        raise CodeError("claim_w must be 2 or 3")
    F = code.field
    H = code.parity_check()
    if H.shape[0] == 0:
        H = np.zeros((1, code.n), dtype=np.int64)
    zero = np.nonzero(~H.any(axis=0))[0]
    if zero.size:
        raise CertificationError(claim_w, (int(zero[0]),))
    if claim_w == 3:
        norm = _normalize_columns(F, H)
        seen: dict[bytes, int] = {}
        for c in range(code.n):
            key = norm[:, c].tobytes()
            if key in seen:
                raise CertificationError(claim_w, (seen[key], c))
            seen[key] = c
    upper = weight(encode(code, witness)) if witness is not None else code.n - code.k + 1
    if upper < claim_w:
        raise CodeError(f"witness weight {upper} contradicts certified d >= {claim_w}")
    code.d_lower = max(code.d_lower or 0, claim_w)
    code.d_upper = upper if code.d_upper is None else min(code.d_upper, upper)
    if code.d_lower == code.d_upper:
        code.d_exact = code.d_lower
    return claim_w, upper


# -- erasure recovery ----------------------------------------------------------------


def information_set(code: LinearCode, available: Sequence[int]) -> list[int]:
    """Lexicographically first set of k positions in ``available`` with invertible columns.

    Greedy column selection in increasing position order yields exactly the
    lexicographically first basis of the column matroid.
    """
    F = code.field
    chosen: list[int] = []
    for pos in sorted(available):
        trial = chosen + [pos]
        if rank(F, code.gen[:, trial]) == len(trial):
            chosen = trial
            if len(chosen) == code.k:
                return chosen
    raise RecoveryError(
        f"unerased positions {sorted(available)} contain no information set (k={code.k})"
    )


def information_set_recover(
    code: LinearCode, received: Sequence[int | None]
) -> tuple[np.ndarray, list[int]]:
    """Recover the message from a word with erasures (``None`` entries).

    Returns the message and the (0-based) positions it was solved from.
    Raises :class:`RecoveryError` if no information set survives or if the
    unerased symbols are not consistent with a single codeword.
    """
    if len(received) != code.n:
        raise CodeError(f"received word has length {len(received)}, expected {code.n}")
    avail = [i for i, v in enumerate(received) if v is not None]
    if len(avail) < code.k:
        raise RecoveryError(f"only {len(avail)} unerased symbols, need k={code.k}")
    positions = information_set(code, avail)
    values = np.array([int(received[i]) for i in positions], dtype=np.int64)
    message = solve_left(code.field, code.gen[:, positions], values)
    word = encode(code, message)
    for i in avail:
        if int(word[i]) != int(received[i]):
            raise RecoveryError(f"received symbol at position {i} is inconsistent")
    return message, positions

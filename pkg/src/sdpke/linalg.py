"""Exact linear algebra over Z_p (p prime) on integer numpy arrays.

Row operations reduce after every multiply, so the int64 fast path is safe
for any p < 2^31; arrays with dtype=object (arbitrary Python ints) go
through the same code paths unchanged.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, SingularMatrixError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit integers."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over Z_p; returns (R, pivot columns)."""
    r = np.array(a, copy=True)
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        if lead == rows:
            break
        nz = np.nonzero(r[lead:, c])[0]
        if nz.size == 0:
            continue
        pivot = lead + int(nz[0])
        if pivot != lead:
            r[[lead, pivot]] = r[[pivot, lead]]
        inv = pow(int(r[lead, c]), -1, p)
        r[lead] = (r[lead] * inv) % p
        factors = r[:, c].copy()
        factors[lead] = 0
        touched = np.nonzero(factors)[0]
        if touched.size:
            r[touched] = (r[touched] - np.outer(factors[touched], r[lead])) % p
        pivots.append(c)
        lead += 1
    return r, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    return len(rref_mod(a, p)[1])


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b over Z_p, or None if inconsistent.

    Free variables are set to zero, so the particular solution is the one
    with support on the pivot columns.
    """
    a = np.asarray(a)
    b = np.asarray(b).reshape(-1)
    if a.shape[0] != b.shape[0]:
        raise ParameterError("solve_mod: incompatible shapes")
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, pivots = rref_mod(aug, p)
    ncols = a.shape[1]
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=a.dtype)
    for row, c in enumerate(pivots):
        x[c] = r[row, ncols]
    return x


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over Z_p; raises SingularMatrixError."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ParameterError("inverse_mod: matrix must be square")
    eye = np.eye(n, dtype=a.dtype)
    aug = np.concatenate([np.asarray(a) % p, eye], axis=1)
    r, pivots = rref_mod(aug, p)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular mod %d" % p)
    return r[:, n:]


class EchelonSpan:
    """Incrementally tracked row space over Z_p.

    Rows are kept in fully reduced echelon form (unit pivots, pivot columns
    zero everywhere else), so reducing a vector against the whole span is a
    single matrix-vector product.  Used to grow a maximal linearly
    independent prefix of a vector sequence.
    """

    def __init__(self, p: int):
        self.p = p
        self._pivots: list[int] = []
        self._rows: np.ndarray | None = None  # (rank, dim), reduced
        self._dtype = None  # chosen at first insert: int64 unless sums could overflow

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        if self._dtype is None:
            # the one-pass reduction sums up to dim products of size (p-1)^2
            headroom = (self.p - 1) ** 2 * max(1, len(v))
            self._dtype = object if headroom >= (1 << 63) else np.int64
        v = np.asarray(v, dtype=self._dtype) % self.p
        if self._rows is not None:
            coeffs = v[self._pivots]
            v = (v - coeffs @ self._rows) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self._reduce(v))

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v``; returns True if it was independent of the span."""
        res = self._reduce(v)
        nz = np.nonzero(res)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        row = (res * pow(int(res[pc]), -1, self.p)) % self.p
        if self._rows is None:
            self._rows = row[None, :]
        else:
            # keep existing rows reduced at the new pivot column
            col = self._rows[:, pc].copy()
            if np.any(col):
                self._rows = (self._rows - np.outer(col, row)) % self.p
            self._rows = np.concatenate([self._rows, row[None, :]], axis=0)
        self._pivots.append(pc)
        return True

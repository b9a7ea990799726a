"""Scalar types and semiring descriptors for the four matrix entry domains.

Scalar classes (ZMod, GroupRingElement, TropicalScalar, BitString) are small
immutable values with operator overloading; they define the arithmetic.
The ring descriptors (IntegersMod, GroupRingScalars, TropicalIntegers,
BitStrings) carry the parameters of a scalar domain and implement the same
arithmetic as vectorized kernels on packed numpy arrays; the Matrix type in
``matrices`` dispatches to them.

Semiring operator convention on scalars: ``+`` is the semiring addition
(min for tropical, OR for bitstrings) and ``*`` is the semiring
multiplication (integer + for tropical, AND for bitstrings).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .groups import FiniteGroupTable
from .permutations import Permutation

#: Formal additive identity of the tropical semiring.  Finite tropical values
#: are always Python ints; the IEEE infinity is used only as this one formal
#: symbol (comparisons and sums against ints are exact).
TROP_INF = float("inf")

# Packed int64 arithmetic is used only while k * (m-1)^2 cannot overflow;
# beyond these bounds the kernels fall back to object arrays of Python ints.
_INT64_MOD_LIMIT = 1 << 28
_GROUPRING_MOD_LIMIT = 1 << 20
_INT64_BITS_LIMIT = 62


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class ZMod:
    """An integer mod m, always stored reduced."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ParameterError("modulus must be >= 2")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int | None:
        if isinstance(other, ZMod):
            if other.modulus != self.modulus:
                raise ParameterError("mixed moduli")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ZMod(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ZMod(self.value - v, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ZMod(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ZMod(-self.value, self.modulus)

    def inverse(self) -> ZMod:
        return ZMod(pow(self.value, -1, self.modulus), self.modulus)

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class GroupRingElement:
    """Formal Z_m-linear combination of the elements of a finite group.

    Multiplication is convolution through the group's Cayley table:
    ``(a*b)_h = sum over f*g = h of a_f b_g``.
    """

    __slots__ = ("group", "modulus", "coeffs")

    def __init__(self, group: FiniteGroupTable, modulus: int, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64) % modulus
        if coeffs.shape != (group.order,):
            raise ParameterError(
                f"need {group.order} coefficients, got shape {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        self.group = group
        self.modulus = modulus
        self.coeffs = coeffs

    @staticmethod
    def zero(group: FiniteGroupTable, modulus: int) -> GroupRingElement:
        return GroupRingElement(group, modulus, np.zeros(group.order, dtype=np.int64))

    @staticmethod
    def basis(group: FiniteGroupTable, modulus: int, index: int) -> GroupRingElement:
        c = np.zeros(group.order, dtype=np.int64)
        c[index] = 1
        return GroupRingElement(group, modulus, c)

    @staticmethod
    def one(group: FiniteGroupTable, modulus: int) -> GroupRingElement:
        return GroupRingElement.basis(group, modulus, group.identity)

    def _check(self, other: GroupRingElement):
        if self.group != other.group or self.modulus != other.modulus:
            raise ParameterError("group ring elements live in different rings")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.group, self.modulus, self.coeffs + other.coeffs)

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.group, self.modulus, self.coeffs - other.coeffs)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        table = self.group.product
        out = np.zeros(self.group.order, dtype=np.int64)
        for f in range(self.group.order):
            af = int(self.coeffs[f])
            if af:
                out[table[f]] += af * other.coeffs
        return GroupRingElement(self.group, self.modulus, out)

    def __rmul__(self, scalar) -> GroupRingElement:
        c = scalar.value if isinstance(scalar, ZMod) else int(scalar)
        return GroupRingElement(self.group, self.modulus, c * self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and self.modulus == other.modulus
            and self.group == other.group
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        terms = [f"{int(c)}.g{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def axpy(c, a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """c*a + b, the scalar action used to take linear combinations."""
    return c * a + b


@dataclass(frozen=True)
class TropicalScalar:
    """An integer under (min, +), or the formal minimum identity +inf."""

    value: object  # int, or TROP_INF

    def __post_init__(self):
        v = self.value
        if v != TROP_INF and not isinstance(v, (int, np.integer)):
            raise ParameterError(f"tropical values are ints or +inf, got {v!r}")
        if isinstance(v, np.integer):
            object.__setattr__(self, "value", int(v))

    def __add__(self, other: TropicalScalar) -> TropicalScalar:
        return TropicalScalar(min(self.value, other.value))

    def __mul__(self, other: TropicalScalar) -> TropicalScalar:
        if self.value == TROP_INF or other.value == TROP_INF:
            return TropicalScalar(TROP_INF)
        return TropicalScalar(self.value + other.value)

    def star(self, other: TropicalScalar) -> TropicalScalar:
        """min(a, b, a+b): addition, plus the correction of their product."""
        return self + other + self * other

    def __repr__(self):
        return "+inf" if self.value == TROP_INF else str(self.value)


@dataclass(frozen=True)
class BitString:
    """A fixed-length bit vector; ``+`` is bitwise OR, ``*`` bitwise AND."""

    mask: int
    length: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.length):
            raise ParameterError("bit mask out of range for declared length")

    @staticmethod
    def from_string(s: str) -> BitString:
        if set(s) - {"0", "1"}:
            raise ParameterError(f"bitstring must be 0/1 text, got {s!r}")
        mask = sum(1 << i for i, ch in enumerate(s) if ch == "1")
        return BitString(mask, len(s))

    def to_string(self) -> str:
        return "".join("1" if (self.mask >> i) & 1 else "0" for i in range(self.length))

    def _check(self, other: BitString):
        if self.length != other.length:
            raise ParameterError("bitstrings of different lengths")

    def __add__(self, other: BitString) -> BitString:
        self._check(other)
        return BitString(self.mask | other.mask, self.length)

    def __mul__(self, other: BitString) -> BitString:
        self._check(other)
        return BitString(self.mask & other.mask, self.length)

    def permuted(self, perm: Permutation) -> BitString:
        """Reindex bits: result bit i is the source bit perm[i]."""
        if len(perm) != self.length:
            raise ParameterError("permutation length differs from bit length")
        mask = 0
        for i in range(self.length):
            mask |= ((self.mask >> perm[i]) & 1) << i
        return BitString(mask, self.length)

    def __repr__(self):
        return f'bits"{self.to_string()}"'


# ---------------------------------------------------------------------------
# ring descriptors / packed kernels


class IntegersMod:
    """Entries in Z_m packed as a (rows, cols) integer array."""

    entry_ndim = 0
    has_subtraction = True

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ParameterError("modulus must be >= 2")
        self.modulus = int(modulus)
        self.dtype = object if self.modulus > _INT64_MOD_LIMIT else np.int64

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.modulus == self.modulus

    def __repr__(self):
        return f"IntegersMod({self.modulus})"

    def normalize(self, data: np.ndarray) -> np.ndarray:
        return np.asarray(data, dtype=self.dtype) % self.modulus

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1 % self.modulus
        return out

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def matmul(self, a, b):
        if self.dtype is object:
            return np.dot(a, b) % self.modulus
        return (a @ b) % self.modulus

    def scale(self, c: int, a):
        return (c * a) % self.modulus

    def entry(self, data, i: int, j: int) -> ZMod:
        return ZMod(int(data[i, j]), self.modulus)

    def pack(self, rows) -> np.ndarray:
        vals = [[e.value if isinstance(e, ZMod) else int(e) for e in r] for r in rows]
        return self.normalize(np.array(vals, dtype=object if self.dtype is object else np.int64))

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        data = rng.integers(0, self.modulus, size=(rows, cols), dtype=np.int64)
        return data.astype(object) if self.dtype is object else data

    def to_obj(self, data) -> list:
        return [[int(x) for x in row] for row in data]

    def from_obj(self, obj) -> np.ndarray:
        return self.normalize(np.array(obj, dtype=object if self.dtype is object else np.int64))


class GroupRingScalars:
    """Entries in Z_m[G] packed as a (rows, cols, |G|) coefficient array."""

    entry_ndim = 1
    has_subtraction = True

    def __init__(self, group: FiniteGroupTable, modulus: int):
        if modulus < 2:
            raise ParameterError("modulus must be >= 2")
        if modulus > _GROUPRING_MOD_LIMIT:
            raise ParameterError("group ring modulus too large for packed arithmetic")
        self.group = group
        self.modulus = int(modulus)
        self.dtype = np.int64

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingScalars)
            and other.modulus == self.modulus
            and other.group == self.group
        )

    def __repr__(self):
        return f"GroupRingScalars({self.group.name}, mod {self.modulus})"

    def normalize(self, data: np.ndarray) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.modulus

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols, self.group.order), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        out[np.arange(n), np.arange(n), self.group.identity] = 1 % self.modulus
        return out

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        # entrywise convolution of two equally shaped coefficient arrays
        n = self.group.order
        pair = np.einsum("...f,...g->...fg", a, b) % self.modulus
        flat = pair.reshape(*a.shape[:-1], n * n)
        return (flat @ self.group.convolution_scatter()) % self.modulus

    def matmul(self, a, b):
        # C_ij = sum_k A_ik * B_kj with * the group ring convolution
        n = self.group.order
        pair = np.einsum("ikf,kjg->ijfg", a, b) % self.modulus
        flat = pair.reshape(a.shape[0], b.shape[1], n * n)
        return (flat @ self.group.convolution_scatter()) % self.modulus

    def scale(self, c: int, a):
        return (c * a) % self.modulus

    def entry(self, data, i: int, j: int) -> GroupRingElement:
        return GroupRingElement(self.group, self.modulus, data[i, j])

    def pack(self, rows) -> np.ndarray:
        arr = np.array([[e.coeffs for e in r] for r in rows], dtype=np.int64)
        return self.normalize(arr)

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.modulus, size=(rows, cols, self.group.order), dtype=np.int64)

    def to_obj(self, data) -> list:
        return [[list(map(int, entry)) for entry in row] for row in data]

    def from_obj(self, obj) -> np.ndarray:
        return self.normalize(np.array(obj, dtype=np.int64))


class TropicalIntegers:
    """Integer (min, +) entries, packed as an object array of Python ints.

    Object dtype keeps the arithmetic exact for arbitrarily large values and
    lets the formal +inf ride along as the IEEE infinity.
    """

    entry_ndim = 0
    has_subtraction = False

    def __init__(self):
        self.dtype = object

    def __eq__(self, other):
        return isinstance(other, TropicalIntegers)

    def __repr__(self):
        return "TropicalIntegers()"

    def normalize(self, data: np.ndarray) -> np.ndarray:
        arr = np.empty(np.shape(data), dtype=object)
        flat = arr.reshape(-1)
        for idx, v in enumerate(np.asarray(data, dtype=object).reshape(-1)):
            if v == TROP_INF:
                flat[idx] = TROP_INF
            elif isinstance(v, (int, np.integer)):
                flat[idx] = int(v)
            else:
                raise ParameterError(f"tropical entries are ints or +inf, got {v!r}")
        return arr

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        # additive identity of (min, +) is +inf
        return np.full((rows, cols), TROP_INF, dtype=object)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 0
        return out

    def add(self, a, b):
        return np.minimum(a, b)

    def mul(self, a, b):
        return a + b

    def matmul(self, a, b):
        return (a[:, :, None] + b[None, :, :]).min(axis=1)

    def entry(self, data, i: int, j: int) -> TropicalScalar:
        return TropicalScalar(data[i, j])

    def pack(self, rows) -> np.ndarray:
        vals = [[e.value if isinstance(e, TropicalScalar) else e for e in r] for r in rows]
        return self.normalize(np.array(vals, dtype=object))

    def random(self, rng: np.random.Generator, rows: int, cols: int, lo: int, hi: int) -> np.ndarray:
        data = rng.integers(lo, hi + 1, size=(rows, cols), dtype=np.int64)
        return self.normalize(data)

    def to_obj(self, data) -> list:
        return [["inf" if x == TROP_INF else int(x) for x in row] for row in data]

    def from_obj(self, obj) -> np.ndarray:
        vals = [[TROP_INF if x == "inf" else int(x) for x in row] for row in obj]
        return self.normalize(np.array(vals, dtype=object))


class BitStrings:
    """Length-k bitstrings under (OR, AND), packed as integer bit masks."""

    entry_ndim = 0
    has_subtraction = False

    def __init__(self, length: int):
        if length < 1:
            raise ParameterError("bit length must be >= 1")
        self.length = int(length)
        self.dtype = object if self.length > _INT64_BITS_LIMIT else np.int64
        self.full_mask = (1 << self.length) - 1

    def __eq__(self, other):
        return isinstance(other, BitStrings) and other.length == self.length

    def __repr__(self):
        return f"BitStrings({self.length})"

    def normalize(self, data: np.ndarray) -> np.ndarray:
        arr = np.asarray(data, dtype=self.dtype)
        if self.dtype is np.int64:
            if arr.min() < 0 or arr.max() > self.full_mask:
                raise ParameterError("bit mask out of range for declared length")
        return arr

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        # AND-identity entry is the all-ones mask
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.full_mask
        return out

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def matmul(self, a, b):
        return np.bitwise_or.reduce(a[:, :, None] & b[None, :, :], axis=1)

    def permute_bits(self, data, perm: Permutation):
        if len(perm) != self.length:
            raise ParameterError("permutation length differs from bit length")
        out = self.zeros(*data.shape)
        for i in range(self.length):
            out |= ((data >> perm[i]) & 1) << i
        return out

    def entry(self, data, i: int, j: int) -> BitString:
        return BitString(int(data[i, j]), self.length)

    def pack(self, rows) -> np.ndarray:
        vals = []
        for r in rows:
            packed = []
            for e in r:
                if isinstance(e, str):
                    e = BitString.from_string(e)
                if isinstance(e, BitString):
                    if e.length != self.length:
                        raise ParameterError("bitstring length differs from ring length")
                    packed.append(e.mask)
                else:
                    packed.append(int(e))
            vals.append(packed)
        return self.normalize(np.array(vals, dtype=object if self.dtype is object else np.int64))

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        bits = rng.integers(0, 2, size=(rows, cols, self.length), dtype=np.int64)
        out = self.zeros(rows, cols)
        for i in range(self.length):
            out |= bits[:, :, i].astype(self.dtype) << i
        return out

    def to_obj(self, data) -> list:
        return [[BitString(int(x), self.length).to_string() for x in row] for row in data]

    def from_obj(self, obj) -> np.ndarray:
        return self.pack(obj)

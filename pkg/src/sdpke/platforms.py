"""Constructors, parameter records, and validators for the five platforms.

Each platform kind has a frozen params dataclass (JSON-serializable, the
thing a transcript embeds) and a ``build()`` that validates the parameters
and returns a ready Platform.  ``random_*_params`` generators draw fresh
parameters from an rng at the desk-scale default sizes.

Defaults here are implementer-chosen working sizes, not security
parameters: group ring Z_7[S_3] with 3x3 matrices (a5 is bundled but
slower), GL(3, 1009), 5x5 tropical with entries in [-1000, 1000], 3x3
additive platform over Z_p, and 3x3 matrices of 28-bit strings permuted by
disjoint cycles of lengths 2, 3, 5, 7, 11.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matrices as mx
from .errors import ParameterError, SingularMatrixError
from .groups import BUNDLED_GROUPS, FiniteGroupTable, load_group
from .holomorph import (
    ConjugatorPower,
    IdentityEnd,
    Platform,
    PermutationPower,
    TropicalStarPower,
    TwoSidedPower,
    validate_platform,
)
from .linalg import is_prime, rank_mod, solve_mod
from .matrices import Matrix
from .permutations import Permutation
from .semirings import BitStrings, GroupRingScalars, IntegersMod, TropicalIntegers


def _validated(platform: Platform) -> Platform:
    # construction-time law checks use a fixed stream: cheap and deterministic
    validate_platform(platform, np.random.default_rng(0), samples=3)
    return platform


# ---------------------------------------------------------------------------
# matrices over group rings, automorphism = conjugation


def left_mul_operator(h: Matrix) -> np.ndarray:
    """Matrix of X -> H @ X on the flattened ambient coordinates.

    Built blockwise: multiplication by one group ring element is the
    regular-representation matrix M[c, g] = coeffs[c * g^-1], and entry
    (i, j) of H @ X couples coordinate block (i, j) to blocks (k, j) with
    weight M of H[i, k].
    """
    ring = h.ring
    if not isinstance(ring, GroupRingScalars):
        raise ParameterError("left-multiplication operator is built for group ring matrices")
    r = h.rows
    group = ring.group
    n = group.order
    # idx[c, g] = c * g^-1, so coeffs[idx] is the left-regular matrix
    idx = group.product[:, group.inverse]
    d = r * r * n
    out = np.zeros((d, d), dtype=np.int64)
    for i in range(r):
        for k in range(r):
            block = h.data[i, k][idx]
            for j in range(r):
                row = (i * r + j) * n
                col = (k * r + j) * n
                out[row : row + n, col : col + n] = block
    return out % ring.modulus


def groupring_inverse(h: Matrix) -> Matrix:
    """Two-sided inverse of a matrix over Z_m[G], via the flatten embedding.

    Solves H @ X = I as a Z_m-linear system; in a finite dimensional
    algebra a right inverse is automatically two-sided, and that is
    asserted before returning.
    """
    modulus = h.ring.modulus
    if not is_prime(modulus):
        raise ParameterError("group ring inverse needs a prime modulus")
    op = left_mul_operator(h)
    ident = mx.identity(h.ring, h.rows)
    x = solve_mod(op, mx.flatten(ident), modulus)
    if x is None:
        raise SingularMatrixError("matrix is not invertible over the group ring")
    inv = mx.unflatten(h.ring, x, h.rows, h.rows)
    if h @ inv != ident or inv @ h != ident:
        raise SingularMatrixError("inverse verification failed")
    return inv


@dataclass(frozen=True)
class GroupRingParams:
    kind = "groupring"
    modulus: int
    group: FiniteGroupTable
    size: int
    conjugator: Matrix
    base: Matrix

    def ring(self) -> GroupRingScalars:
        return GroupRingScalars(self.group, self.modulus)

    def build(self, allow_commuting: bool = False) -> Platform:
        if not is_prime(self.modulus):
            raise ParameterError("group ring platform needs a prime coefficient modulus")
        h, g = self.conjugator, self.base
        if h.shape != (self.size, self.size) or g.shape != (self.size, self.size):
            raise ParameterError("conjugator/base shape does not match declared size")
        try:
            h_inv = groupring_inverse(h)
        except SingularMatrixError as exc:
            raise ParameterError(f"conjugator is singular: {exc}") from exc
        if not allow_commuting and h @ g == g @ h:
            raise ParameterError("base commutes with the conjugator; degenerate instance")
        ring = self.ring()
        return _validated(
            Platform(
                name="groupring",
                op_kind="mul",
                g=g,
                phi=ConjugatorPower(h, h_inv),
                params=self,
                sampler=lambda rng: mx.random_matrix(rng, ring, self.size, self.size),
            )
        )

    def to_obj(self) -> dict:
        group = self.group.name if self.group.name in BUNDLED_GROUPS else self.group.to_obj()
        return {
            "kind": self.kind,
            "modulus": self.modulus,
            "group": group,
            "size": self.size,
            "H": self.conjugator.to_obj(),
            "g": self.base.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> GroupRingParams:
        group = obj["group"]
        table = load_group(group) if isinstance(group, str) else FiniteGroupTable.from_obj(group)
        ring = GroupRingScalars(table, obj["modulus"])
        return GroupRingParams(
            modulus=obj["modulus"],
            group=table,
            size=obj["size"],
            conjugator=mx.from_obj(ring, obj["H"]),
            base=mx.from_obj(ring, obj["g"]),
        )


def random_groupring_params(
    rng: np.random.Generator,
    modulus: int = 7,
    group: FiniteGroupTable | str = "s3",
    size: int = 3,
) -> GroupRingParams:
    table = load_group(group) if isinstance(group, str) else group
    ring = GroupRingScalars(table, modulus)
    while True:
        h = mx.random_matrix(rng, ring, size, size)
        try:
            groupring_inverse(h)
        except SingularMatrixError:
            continue
        break
    while True:
        g = mx.random_matrix(rng, ring, size, size)
        if h @ g != g @ h:
            break
    return GroupRingParams(modulus=modulus, group=table, size=size, conjugator=h, base=g)


# ---------------------------------------------------------------------------
# GL(r, p), automorphism = conjugation (the invertible variant used by the
# public-key encryption scheme)


@dataclass(frozen=True)
class GLParams:
    kind = "gl"
    prime: int
    size: int
    conjugator: Matrix
    base: Matrix

    def ring(self) -> IntegersMod:
        return IntegersMod(self.prime)

    def build(self, allow_commuting: bool = False) -> Platform:
        if not is_prime(self.prime):
            raise ParameterError("GL platform needs a prime field")
        h, g = self.conjugator, self.base
        if h.shape != (self.size, self.size) or g.shape != (self.size, self.size):
            raise ParameterError("conjugator/base shape does not match declared size")
        try:
            h_inv = mx.inverse(h)
        except SingularMatrixError as exc:
            raise ParameterError("conjugator is singular") from exc
        if mx.try_inverse(g) is None:
            raise ParameterError("base element must be invertible")
        if not allow_commuting and h @ g == g @ h:
            raise ParameterError("base commutes with the conjugator; degenerate instance")
        ring = self.ring()
        return _validated(
            Platform(
                name="gl",
                op_kind="mul",
                g=g,
                phi=ConjugatorPower(h, h_inv),
                params=self,
                sampler=lambda rng: mx.random_matrix(rng, ring, self.size, self.size),
            )
        )

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "prime": self.prime,
            "size": self.size,
            "H": self.conjugator.to_obj(),
            "g": self.base.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> GLParams:
        ring = IntegersMod(obj["prime"])
        return GLParams(
            prime=obj["prime"],
            size=obj["size"],
            conjugator=mx.from_obj(ring, obj["H"]),
            base=mx.from_obj(ring, obj["g"]),
        )


def random_gl_params(rng: np.random.Generator, prime: int = 1009, size: int = 3) -> GLParams:
    ring = IntegersMod(prime)

    def invertible() -> Matrix:
        while True:
            m = mx.random_matrix(rng, ring, size, size)
            if mx.try_inverse(m) is not None:
                return m

    h = invertible()
    while True:
        g = invertible()
        if h @ g != g @ h:
            break
    return GLParams(prime=prime, size=size, conjugator=h, base=g)


# ---------------------------------------------------------------------------
# tropical matrices under entrywise min, action through the star product


@dataclass(frozen=True)
class TropicalParams:
    kind = "tropical"
    size: int
    entry_lo: int
    entry_hi: int
    star_matrix: Matrix
    base: Matrix

    def ring(self) -> TropicalIntegers:
        return TropicalIntegers()

    def build(self) -> Platform:
        h, g = self.star_matrix, self.base
        if h.shape != (self.size, self.size) or g.shape != (self.size, self.size):
            raise ParameterError("matrix shape does not match declared size")
        ring = self.ring()
        # the closed-form phi^n = ⋆(H^⋆n) leans on star associativity; probe it
        # on samples and fall back to one-step-at-a-time application if it
        # ever failed
        probe = np.random.default_rng(0)
        star_safe = True
        for _ in range(4):
            a = mx.random_matrix(probe, ring, self.size, self.size, lo=self.entry_lo, hi=self.entry_hi)
            b = mx.random_matrix(probe, ring, self.size, self.size, lo=self.entry_lo, hi=self.entry_hi)
            c = mx.random_matrix(probe, ring, self.size, self.size, lo=self.entry_lo, hi=self.entry_hi)
            if a.star(b).star(c) != a.star(b.star(c)):
                star_safe = False
                break
        return _validated(
            Platform(
                name="tropical",
                op_kind="add",
                g=g,
                phi=TropicalStarPower(h, star_safe),
                params=self,
                sampler=lambda rng: mx.random_matrix(
                    rng, ring, self.size, self.size, lo=self.entry_lo, hi=self.entry_hi
                ),
            )
        )

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "entry_lo": self.entry_lo,
            "entry_hi": self.entry_hi,
            "H": self.star_matrix.to_obj(),
            "g": self.base.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> TropicalParams:
        ring = TropicalIntegers()
        return TropicalParams(
            size=obj["size"],
            entry_lo=obj["entry_lo"],
            entry_hi=obj["entry_hi"],
            star_matrix=mx.from_obj(ring, obj["H"]),
            base=mx.from_obj(ring, obj["g"]),
        )


def random_tropical_params(
    rng: np.random.Generator, size: int = 5, entry_lo: int = -1000, entry_hi: int = 1000
) -> TropicalParams:
    ring = TropicalIntegers()
    h = mx.random_matrix(rng, ring, size, size, lo=entry_lo, hi=entry_hi)
    g = mx.random_matrix(rng, ring, size, size, lo=entry_lo, hi=entry_hi)
    return TropicalParams(size=size, entry_lo=entry_lo, entry_hi=entry_hi, star_matrix=h, base=g)


# ---------------------------------------------------------------------------
# additive matrix platform: op = +, phi(X) = H1 X H2 with singular factors


@dataclass(frozen=True)
class MakeParams:
    kind = "make"
    prime: int
    size: int
    left_factor: Matrix
    right_factor: Matrix
    base: Matrix

    def ring(self) -> IntegersMod:
        return IntegersMod(self.prime)

    def build(self) -> Platform:
        if not is_prime(self.prime):
            raise ParameterError("additive platform needs a prime field")
        h1, h2, g = self.left_factor, self.right_factor, self.base
        for m in (h1, h2, g):
            if m.shape != (self.size, self.size):
                raise ParameterError("matrix shape does not match declared size")
        for label, m in (("left", h1), ("right", h2)):
            if rank_mod(np.asarray(m.data), self.prime) == self.size:
                raise ParameterError(f"{label} factor must be non-invertible")
        ring = self.ring()
        return _validated(
            Platform(
                name="make",
                op_kind="add",
                g=g,
                phi=TwoSidedPower(h1, h2),
                params=self,
                sampler=lambda rng: mx.random_matrix(rng, ring, self.size, self.size),
            )
        )

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "prime": self.prime,
            "size": self.size,
            "H1": self.left_factor.to_obj(),
            "H2": self.right_factor.to_obj(),
            "g": self.base.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> MakeParams:
        ring = IntegersMod(obj["prime"])
        return MakeParams(
            prime=obj["prime"],
            size=obj["size"],
            left_factor=mx.from_obj(ring, obj["H1"]),
            right_factor=mx.from_obj(ring, obj["H2"]),
            base=mx.from_obj(ring, obj["g"]),
        )


def _random_singular(rng: np.random.Generator, ring: IntegersMod, n: int) -> Matrix:
    # a rank-deficient product has a zero eigenvalue by construction
    while True:
        u = mx.random_matrix(rng, ring, n, max(n - 1, 1))
        v = mx.random_matrix(rng, ring, max(n - 1, 1), n)
        m = u @ v if n > 1 else mx.from_rows(ring, [[0]])
        if rank_mod(np.asarray(m.data), ring.modulus) < n:
            return m


def random_make_params(
    rng: np.random.Generator, prime: int = 2**31 - 1, size: int = 3
) -> MakeParams:
    ring = IntegersMod(prime)
    h1 = _random_singular(rng, ring, size)
    h2 = _random_singular(rng, ring, size)
    g = mx.random_matrix(rng, ring, size, size)
    return MakeParams(prime=prime, size=size, left_factor=h1, right_factor=h2, base=g)


# ---------------------------------------------------------------------------
# matrices of bitstrings under OR/AND, automorphism = bit permutation


@dataclass(frozen=True)
class MobsParams:
    kind = "mobs"
    size: int
    bits: int
    bit_permutation: Permutation
    base: Matrix

    def ring(self) -> BitStrings:
        return BitStrings(self.bits)

    def build(self) -> Platform:
        if len(self.bit_permutation) != self.bits:
            raise ParameterError("permutation length differs from bit length")
        if self.base.shape != (self.size, self.size):
            raise ParameterError("base shape does not match declared size")
        # fixed points are allowed (the identity permutation is the
        # degenerate DH case); every nontrivial cycle must have prime length
        for cyc in self.bit_permutation.cycles():
            if len(cyc) > 1 and not is_prime(len(cyc)):
                raise ParameterError(f"cycle length {len(cyc)} is not prime")
        ring = self.ring()
        return _validated(
            Platform(
                name="mobs",
                op_kind="mul",
                g=self.base,
                phi=PermutationPower(self.bit_permutation),
                params=self,
                sampler=lambda rng: mx.random_matrix(rng, ring, self.size, self.size),
            )
        )

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "bits": self.bits,
            "permutation": list(self.bit_permutation),
            "g": self.base.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> MobsParams:
        ring = BitStrings(obj["bits"])
        return MobsParams(
            size=obj["size"],
            bits=obj["bits"],
            bit_permutation=Permutation(obj["permutation"]),
            base=mx.from_obj(ring, obj["g"]),
        )


def cycle_permutation(cycle_lengths: tuple[int, ...]) -> Permutation:
    """Disjoint consecutive cycles of the given lengths; order = lcm."""
    k = sum(cycle_lengths)
    cycles, start = [], 0
    for l in cycle_lengths:
        cycles.append(tuple(range(start, start + l)))
        start += l
    return Permutation.from_cycles(cycles, k)


def random_mobs_params(
    rng: np.random.Generator, size: int = 3, cycle_lengths: tuple[int, ...] = (2, 3, 5, 7, 11)
) -> MobsParams:
    bits = sum(cycle_lengths)
    ring = BitStrings(bits)
    g = mx.random_matrix(rng, ring, size, size)
    return MobsParams(size=size, bits=bits, bit_permutation=cycle_permutation(cycle_lengths), base=g)


# ---------------------------------------------------------------------------
# plain DH as the identity-automorphism special case (sanity oracle)


@dataclass(frozen=True)
class DhkeParams:
    kind = "dhke"
    prime: int
    generator: int

    def ring(self) -> IntegersMod:
        return IntegersMod(self.prime)

    def build(self) -> Platform:
        if not is_prime(self.prime):
            raise ParameterError("DH platform needs a prime modulus")
        if self.generator % self.prime == 0:
            raise ParameterError("generator must be nonzero mod p")
        ring = self.ring()
        g = mx.from_rows(ring, [[self.generator]])

        def sample(rng: np.random.Generator) -> Matrix:
            return mx.from_rows(ring, [[int(rng.integers(1, self.prime))]])

        return _validated(
            Platform(name="dhke", op_kind="mul", g=g, phi=IdentityEnd(), params=self, sampler=sample)
        )

    def to_obj(self) -> dict:
        return {"kind": self.kind, "prime": self.prime, "generator": self.generator}

    @staticmethod
    def from_obj(obj: dict) -> DhkeParams:
        return DhkeParams(prime=obj["prime"], generator=obj["generator"])


def random_dhke_params(rng: np.random.Generator, prime: int = 2**31 - 1) -> DhkeParams:
    return DhkeParams(prime=prime, generator=int(rng.integers(2, prime)))


# ---------------------------------------------------------------------------
# dispatch


_PARAM_TYPES = {
    "groupring": GroupRingParams,
    "gl": GLParams,
    "tropical": TropicalParams,
    "make": MakeParams,
    "mobs": MobsParams,
    "dhke": DhkeParams,
}

PLATFORM_KINDS = tuple(_PARAM_TYPES)

_GENERATORS = {
    "groupring": random_groupring_params,
    "gl": random_gl_params,
    "tropical": random_tropical_params,
    "make": random_make_params,
    "mobs": random_mobs_params,
    "dhke": random_dhke_params,
}


def params_from_obj(obj: dict):
    kind = obj.get("kind")
    if kind not in _PARAM_TYPES:
        raise ParameterError(f"unknown platform kind {kind!r}")
    return _PARAM_TYPES[kind].from_obj(obj)


def random_params(kind: str, rng: np.random.Generator, **overrides):
    if kind not in _GENERATORS:
        raise ParameterError(f"unknown platform kind {kind!r}")
    return _GENERATORS[kind](rng, **overrides)

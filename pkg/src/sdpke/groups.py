"""Finite groups given by explicit Cayley tables.

A group of order n is a table ``product[i, j]`` of element indices plus an
identity index and an inverse table.  Tables are validated on construction
(full associativity sweep; fine at desk scale).  Small groups used by the
matrix-over-group-ring platform ship as JSON data files: c2, s3, a4, a5.
"""

from __future__ import annotations

import itertools
import json
from importlib import resources

import numpy as np

from .errors import ParameterError

BUNDLED_GROUPS = ("c2", "s3", "a4", "a5")


class FiniteGroupTable:
    """A finite group presented by its Cayley table on indices 0..order-1."""

    __slots__ = ("name", "order", "product", "identity", "inverse", "_scatter")

    def __init__(self, product, name: str = "group", validate: bool = True):
        product = np.asarray(product, dtype=np.int64)
        if product.ndim != 2 or product.shape[0] != product.shape[1]:
            raise ParameterError("product table must be square")
        self.name = name
        self.order = product.shape[0]
        product.setflags(write=False)
        self.product = product
        self.identity = self._find_identity()
        self.inverse = self._build_inverses()
        self._scatter = None
        if validate:
            self.validate()

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(self.product[e], idx) and np.array_equal(self.product[:, e], idx):
                return e
        raise ParameterError("table has no identity element")

    def _build_inverses(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.product == self.identity)
        inv[rows] = cols
        if np.any(inv < 0):
            raise ParameterError("some element has no inverse")
        inv.setflags(write=False)
        return inv

    def validate(self) -> None:
        """Check closure, associativity, and inverse consistency."""
        p = self.product
        n = self.order
        if p.min() < 0 or p.max() >= n:
            raise ParameterError("product table entries out of range")
        # (i*j)*k == i*(j*k), checked over all n^3 triples at once
        left = p[p, :]            # left[i, j, k] = (i*j)*k
        right = p[:, p]           # right[i, j, k] = i*(j*k)
        if not np.array_equal(left, right):
            raise ParameterError("product table is not associative")
        if not np.all(p[np.arange(n), self.inverse] == self.identity):
            raise ParameterError("inverse table inconsistent with product")

    def mul(self, i: int, j: int) -> int:
        return int(self.product[i, j])

    def convolution_scatter(self) -> np.ndarray:
        """One-hot matrix S of shape (n*n, n) with S[i*n+j, product[i,j]] = 1.

        Flattened outer products of coefficient vectors land on the right
        group-ring coefficients via ``pair.reshape(-1, n*n) @ S``.
        """
        if self._scatter is None:
            n = self.order
            s = np.zeros((n * n, n), dtype=np.int64)
            s[np.arange(n * n), self.product.reshape(-1)] = 1
            s.setflags(write=False)
            self._scatter = s
        return self._scatter

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroupTable) and np.array_equal(self.product, other.product)

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name!r}, order={self.order})"

    def to_obj(self) -> dict:
        return {
            "order": self.order,
            "product": self.product.tolist(),
            "identity": self.identity,
            "inverse": self.inverse.tolist(),
        }

    @staticmethod
    def from_obj(obj: dict, name: str = "group") -> FiniteGroupTable:
        for field in ("order", "product", "identity", "inverse"):
            if field not in obj:
                raise ParameterError(f"group table record missing field {field!r}")
        table = FiniteGroupTable(obj["product"], name=name)
        if table.order != obj["order"]:
            raise ParameterError("declared order does not match product table")
        if table.identity != obj["identity"]:
            raise ParameterError("declared identity does not match product table")
        if not np.array_equal(table.inverse, np.asarray(obj["inverse"], dtype=np.int64)):
            raise ParameterError("declared inverse table does not match product table")
        return table


def _perm_group_table(perms: list[tuple[int, ...]], name: str) -> FiniteGroupTable:
    """Cayley table of a set of permutations closed under composition.

    The group product is ``(g*h)(x) = g(h(x))``; element order follows the
    given list.
    """
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, g in enumerate(perms):
        for j, h in enumerate(perms):
            gh = tuple(g[h[x]] for x in range(len(g)))
            if gh not in index:
                raise ParameterError("permutation set is not closed under composition")
            table[i, j] = index[gh]
    return FiniteGroupTable(table, name=name)


def cyclic_group(n: int) -> FiniteGroupTable:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroupTable(table, name=f"c{n}")


def symmetric_group(n: int) -> FiniteGroupTable:
    perms = list(itertools.permutations(range(n)))
    return _perm_group_table(perms, name=f"s{n}")


def _is_even(perm: tuple[int, ...]) -> bool:
    inversions = sum(
        1 for a, b in itertools.combinations(range(len(perm)), 2) if perm[a] > perm[b]
    )
    return inversions % 2 == 0


def alternating_group(n: int) -> FiniteGroupTable:
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _perm_group_table(perms, name=f"a{n}")


def load_group_json(text: str, name: str = "group") -> FiniteGroupTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"malformed group table JSON: {exc}") from exc
    return FiniteGroupTable.from_obj(obj, name=name)


def load_group(name: str) -> FiniteGroupTable:
    """Load one of the bundled Cayley tables by name (c2, s3, a4, a5)."""
    if name not in BUNDLED_GROUPS:
        raise ParameterError(f"unknown bundled group {name!r}; have {BUNDLED_GROUPS}")
    text = resources.files("sdpke.data").joinpath(f"{name}.json").read_text()
    return load_group_json(text, name=name)

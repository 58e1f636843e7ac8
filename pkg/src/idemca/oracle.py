"""Brute-force ground truth over finite carriers.

Every configuration x : G -> A of a finite group is enumerated, so these
functions check the local criteria against the global definition directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, DomainMismatchError
from .group import FiniteGroup
from .pattern import Pattern
from .rule import LocalRule, _combine, check_size

DEFAULT_MAX_CONFIGS = 2**20


@dataclass(frozen=True)
class GlobalConfiguration:
    carrier: FiniteGroup
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.carrier.order:
            raise DomainError("a configuration needs one value per group element")

    def translate(self, g) -> "GlobalConfiguration":
        """g . x, i.e. h -> x(g^-1 h)."""
        G = self.carrier
        gi = G.inv(g)
        return GlobalConfiguration(G, tuple(self.values[G.mul(gi, h)] for h in G.elements))


def all_configurations(G: FiniteGroup, k: int = 2, cap: int = DEFAULT_MAX_CONFIGS) -> np.ndarray:
    """Array of shape (k^|G|, |G|), rows in lexicographic order."""
    n = G.order
    size = check_size(k, n, cap)
    codes = np.arange(size, dtype=np.int64)
    return np.stack([(codes // k ** (n - 1 - j)) % k for j in range(n)], axis=1).astype(np.uint8)


def _check_carrier(r: LocalRule, G: FiniteGroup) -> None:
    if r.group != G:
        raise DomainMismatchError("the rule's memory set does not live in this carrier")


def apply_batch(r: LocalRule, G: FiniteGroup, X: np.ndarray) -> np.ndarray:
    """tau(x)(g) = mu((g^-1 . x)|_S) = mu((x(gs))_{s in S}) for every row x."""
    _check_carrier(r, G)
    out = np.empty_like(X)
    for g in G.elements:
        idx = _combine([X[:, G.mul(g, s)] for s in r.memory], r.k)
        out[:, g] = r.table[idx] if len(r.memory) else r.table[0]
    return out


def global_apply(r: LocalRule, x: GlobalConfiguration) -> GlobalConfiguration:
    X = np.asarray([x.values], dtype=np.uint8)
    return GlobalConfiguration(x.carrier, tuple(apply_batch(r, x.carrier, X)[0]))


def global_idempotent(r: LocalRule, G: FiniteGroup, cap: int = DEFAULT_MAX_CONFIGS) -> bool:
    X = all_configurations(G, r.k, cap)
    once = apply_batch(r, G, X)
    return bool(np.array_equal(apply_batch(r, G, once), once))


def fix_set(r: LocalRule, G: FiniteGroup, cap: int = DEFAULT_MAX_CONFIGS) -> set[tuple]:
    X = all_configurations(G, r.k, cap)
    fixed = np.all(apply_batch(r, G, X) == X, axis=1)
    return {tuple(int(v) for v in row) for row in X[fixed]}


def avoiding_set(p: Pattern, G: FiniteGroup, cap: int = DEFAULT_MAX_CONFIGS) -> set[tuple]:
    """Configurations in which p occurs at no translate."""
    if p.group != G:
        raise DomainMismatchError("the pattern does not live in this carrier")
    X = all_configurations(G, p.k, cap)
    seen = np.zeros(len(X), dtype=bool)
    target = np.asarray(p.values, dtype=np.uint8)
    for g in G.elements:
        cols = X[:, [G.mul(g, s) for s in p.domain]]
        seen |= np.all(cols == target, axis=1)
    return {tuple(int(v) for v in row) for row in X[~seen]}

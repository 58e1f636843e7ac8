"""Dense local rules A^S -> A, the star composition, and pattern rules.

A rule's table is indexed by the mixed-radix code of its input read in the
memory set's display order, leftmost element most significant.  For the
elementary memory set (-1, 0, 1) with k = 2 the code of ``z`` is the 3-bit
number ``z(-1) z(0) z(1)``, so a table read from index 7 down to 0 is the
familiar 111..000 listing and the Wolfram number is ``sum(table[i] << i)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, DomainMismatchError, IdentityRuleError, SizeCapError
from .group import FreeAbelianGroup, Group, GroupSubset, Z, positions, set_product
from .pattern import Pattern

DEFAULT_MAX_TABLE = 2**24
ELEMENTARY = GroupSubset(Z, (-1, 0, 1))


def max_table() -> int:
    """Largest permitted table length; override with IDEMCA_MAX_TABLE."""
    return int(os.environ.get("IDEMCA_MAX_TABLE", DEFAULT_MAX_TABLE))


def check_size(k: int, n: int, cap: int | None = None) -> int:
    cap = max_table() if cap is None else cap
    size = k**n
    if size > cap:
        raise SizeCapError(f"table of {k}^{n} = {size} entries exceeds the cap of {cap}")
    return size


def digit_columns(n: int, k: int, cap: int | None = None) -> list[np.ndarray]:
    """Column j holds digit j of every code 0 .. k^n - 1 (shared, read-only)."""
    check_size(k, n, cap)
    return _digit_columns(n, k)


@lru_cache(maxsize=8)
def _digit_columns(n: int, k: int) -> list[np.ndarray]:
    codes = np.arange(k**n, dtype=np.int64)
    cols = []
    for j in range(n):
        c = ((codes // k ** (n - 1 - j)) % k).astype(np.uint8)
        c.setflags(write=False)
        cols.append(c)
    return cols


def encode(values: Sequence[int], k: int) -> int:
    code = 0
    for v in values:
        code = code * k + int(v)
    return code


def decode(code: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(n):
        code, v = divmod(code, k)
        out.append(v)
    return tuple(reversed(out))


def _combine(cols: Sequence[np.ndarray], k: int) -> np.ndarray:
    dtype = np.int32 if k ** len(cols) < 2**31 else np.int64
    idx = np.zeros(cols[0].shape if cols else 1, dtype=dtype)
    for c in cols:
        idx *= k
        idx += c
    return idx


@dataclass(frozen=True, eq=False)
class LocalRule:
    memory: GroupSubset
    k: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.uint8).ravel()
        if table.size != self.k ** len(self.memory):
            raise DomainError(f"table length {table.size} != {self.k}^{len(self.memory)}")
        if table.size and int(table.max()) >= self.k:
            raise DomainError("table entries outside the alphabet")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @property
    def group(self) -> Group:
        return self.memory.group

    def __eq__(self, other):
        if not isinstance(other, LocalRule):
            return NotImplemented
        return self.memory == other.memory and self.k == other.k and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.memory, self.k, self.table.tobytes()))

    def __call__(self, z) -> int:
        return evaluate(self, z)

    def table_string(self) -> str:
        """Outputs listed from the highest input code down to 0."""
        return "".join(str(int(v)) for v in self.table[::-1])

    def __repr__(self):
        return f"LocalRule(memory={self.memory.format()}, k={self.k}, table={self.table_string()})"


def evaluate(r: LocalRule, z: Sequence[int] | Mapping) -> int:
    if isinstance(z, Mapping):
        z = [z[s] for s in r.memory]
    if len(z) != len(r.memory):
        raise DomainError("input fragment does not cover the memory set")
    return int(r.table[encode(z, r.k)])


def identity_rule(memory: GroupSubset | None = None, k: int = 2, group: Group = Z) -> LocalRule:
    memory = memory if memory is not None else GroupSubset(group, (group.identity,))
    e = memory.group.identity
    if e not in memory:
        raise DomainError("the identity rule needs e in its memory set")
    cols = digit_columns(len(memory), k)
    return LocalRule(memory, k, cols[memory.index(e)])


def constant_rule(memory: GroupSubset, b: int, k: int = 2) -> LocalRule:
    return LocalRule(memory, k, np.full(k ** len(memory), b))


def rule_from_pattern(p: Pattern, a: int, allow_identity: bool = False) -> LocalRule:
    """The rule writing ``a`` on input ``p`` and copying ``z(e)`` otherwise."""
    if not 0 <= a < p.k:
        raise DomainError(f"write symbol {a} outside alphabet of size {p.k}")
    if a == p.at_identity and not allow_identity:
        raise IdentityRuleError(f"writing p(e) = {a} gives the identity CA")
    base = identity_rule(p.domain, p.k)
    table = base.table.copy()
    table[encode(p.values, p.k)] = a
    return LocalRule(p.domain, p.k, table)


def from_table_string(text: str, memory: GroupSubset, k: int = 2) -> LocalRule:
    """Inverse of :meth:`LocalRule.table_string` (highest input code first)."""
    text = text.strip()
    return LocalRule(memory, k, [int(c, 36) for c in reversed(text)])


def from_wolfram(number: int) -> LocalRule:
    if not 0 <= number < 256:
        raise DomainError("Wolfram numbers range over 0..255")
    return LocalRule(ELEMENTARY, 2, [(number >> i) & 1 for i in range(8)])


def _check_compatible(a: LocalRule, b: LocalRule) -> None:
    if a.group != b.group or a.k != b.k:
        raise DomainMismatchError("rules over different groups or alphabets")


def star(mu: LocalRule, nu: LocalRule, cap: int | None = None) -> LocalRule:
    """Local rule of the composite CA tau o sigma (mu for tau, nu for sigma).

    Memory set is the canonical product TS; on ``z`` it returns
    ``mu((nu(z_t))_{t in T})`` with ``z_t(s) = z(ts)``.
    """
    _check_compatible(mu, nu)
    T, S, k = mu.memory, nu.memory, mu.k
    TS = set_product(T, S) if len(T) and len(S) else GroupSubset(T.group, ())
    if not len(T):
        return LocalRule(TS, k, np.full(k ** len(TS), mu.table[0]))
    cols = digit_columns(len(TS), k, cap)
    inner = []
    for t in T:
        pos = positions(TS, t, S)
        idx = _combine([cols[i] for i in pos], k) if pos else np.zeros(k ** len(TS), dtype=np.int64)
        inner.append(nu.table[idx])
    return LocalRule(TS, k, mu.table[_combine(inner, k)])


def extend(r: LocalRule, window: GroupSubset, cap: int | None = None) -> LocalRule:
    """The same CA described on the larger memory set ``window``."""
    if not r.memory.issubset(window):
        raise DomainError(f"memory {r.memory.format()} is not contained in {window.format()}")
    if window == r.memory:
        return r
    cols = digit_columns(len(window), r.k, cap)
    pos = [window.index(s) for s in r.memory]
    if pos:
        idx = _combine([cols[i] for i in pos], r.k)
    else:
        idx = np.zeros(r.k ** len(window), dtype=np.int64)
    return LocalRule(window, r.k, r.table[idx])


def rules_equal(r1: LocalRule, r2: LocalRule, cap: int | None = None) -> bool:
    """Do the two rules define the same CA?"""
    _check_compatible(r1, r2)
    if r1.memory == r2.memory:
        return bool(np.array_equal(r1.table, r2.table))
    union = r1.memory.union(r2.memory)
    return bool(np.array_equal(extend(r1, union, cap).table, extend(r2, union, cap).table))


def minimal_memory_set(r: LocalRule) -> tuple[GroupSubset, LocalRule]:
    """Drop every inessential coordinate; the kept ones keep their display order."""
    n, k = len(r.memory), r.k
    arr = r.table.reshape((k,) * n)
    keep = []
    for j in range(n):
        if not np.all(arr == arr.take([0], axis=j)):
            keep.append(j)
    index = tuple(slice(None) if j in keep else 0 for j in range(n))
    reduced = np.ascontiguousarray(arr[index]).ravel()
    memory = GroupSubset(r.group, tuple(r.memory.members[j] for j in keep))
    return memory, LocalRule(memory, k, reduced)


def wolfram_number(r: LocalRule) -> int:
    if not (isinstance(r.group, FreeAbelianGroup) and r.group.d == 1) or r.k != 2:
        raise DomainError("Wolfram numbers need a binary rule over Z")
    if not r.memory.issubset(ELEMENTARY):
        raise DomainError(f"memory {r.memory.format()} is not inside {{-1,0,1}}")
    table = extend(r, ELEMENTARY).table
    return int(sum(int(v) << i for i, v in enumerate(table)))


def as_pattern_rule(r: LocalRule) -> tuple[Pattern, int] | None:
    """Recover (p, a) if ``r`` differs from the projection to e on exactly one input."""
    e = r.group.identity
    if e not in r.memory:
        raise DomainError("pattern detection needs e in the memory set")
    proj = identity_rule(r.memory, r.k).table
    diff = np.flatnonzero(r.table != proj)
    if diff.size != 1:
        return None
    code = int(diff[0])
    return Pattern(r.memory, decode(code, len(r.memory), r.k), r.k), int(r.table[code])


@dataclass(frozen=True)
class PatternCA:
    """The CA that writes ``write`` where it reads ``pattern`` and is the identity elsewhere."""

    pattern: Pattern
    write: int

    def __post_init__(self):
        if not 0 <= self.write < self.pattern.k:
            raise DomainError(f"write symbol {self.write} outside the alphabet")
        if self.write == self.pattern.at_identity:
            raise IdentityRuleError(f"writing p(e) = {self.write} gives the identity CA")

    @classmethod
    def flip(cls, p: Pattern) -> "PatternCA":
        """Binary shorthand: write the complement of p(e)."""
        if p.k != 2:
            raise DomainError("the complement shorthand is for binary alphabets")
        return cls(p, 1 - p.at_identity)

    @cached_property
    def rule(self) -> LocalRule:
        return rule_from_pattern(self.pattern, self.write)

    @property
    def domain(self) -> GroupSubset:
        return self.pattern.domain

    def __str__(self):
        return f"{self.pattern.string}/{self.write}@{self.domain.format()}"

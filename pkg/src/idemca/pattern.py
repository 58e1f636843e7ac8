"""Patterns p : S -> A and their structural predicates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, DomainMismatchError
from .group import Group, GroupSubset, Z, as_subset, parse_subset


@dataclass(frozen=True)
class Pattern:
    """A pattern on an ordered domain containing the identity.

    ``values[i]`` is the symbol at ``domain.members[i]``; the alphabet is
    ``{0, ..., k-1}`` with ``k >= 2``.
    """

    domain: GroupSubset
    values: tuple
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.k < 2:
            raise DomainError(f"alphabet size must be >= 2, got {self.k}")
        if len(self.values) != len(self.domain):
            raise DomainError("one value per domain element is required")
        if any(not 0 <= v < self.k for v in self.values):
            raise DomainError(f"values {self.values} outside alphabet of size {self.k}")
        if self.group.identity not in self.domain:
            raise DomainError("pattern domains must contain the identity")

    @classmethod
    def from_string(cls, text: str, domain: GroupSubset | Sequence, k: int = 2, group: Group = Z) -> "Pattern":
        domain = as_subset(group, domain)
        text = text.replace(" ", "")
        if len(text) != len(domain):
            raise DomainError(f"pattern {text!r} has {len(text)} symbols for a domain of size {len(domain)}")
        return cls(domain, tuple(int(c, 36) for c in text), k)

    @classmethod
    def parse(cls, text: str, domain: str, k: int = 2, group: Group = Z) -> "Pattern":
        return cls.from_string(text, parse_subset(group, domain), k, group)

    @property
    def group(self) -> Group:
        return self.domain.group

    def __call__(self, s) -> int:
        return self.values[self.domain.index(s)]

    @property
    def at_identity(self) -> int:
        return self(self.group.identity)

    def as_dict(self) -> dict:
        return dict(zip(self.domain.members, self.values))

    @property
    def string(self) -> str:
        return "".join(_symbol(v) for v in self.values)

    def __str__(self):
        return f"{self.string}@{self.domain.format()}"

    def restrict(self, sub: GroupSubset) -> "Pattern":
        d = self.as_dict()
        return Pattern(sub, tuple(d[s] for s in sub), self.k)

    def relabel(self, perm: Sequence[int]) -> "Pattern":
        """Apply an alphabet permutation symbol-wise."""
        return Pattern(self.domain, tuple(perm[v] for v in self.values), self.k)

    def to_json(self, write: int | None = None) -> dict:
        out = {
            "group": self.group.spec(),
            "domain": [list(g) if isinstance(g, tuple) else g for g in self.domain],
            "values": list(self.values),
            "alphabet": self.k,
        }
        if write is not None:
            out["write"] = write
        return out


def _symbol(v: int) -> str:
    return "0123456789abcdefghijklmnopqrstuvwxyz"[v]


def is_constant(p: Pattern) -> bool:
    return len(set(p.values)) <= 1


def is_symmetrical(p: Pattern) -> bool:
    if not p.domain.is_symmetric():
        return False
    g = p.group
    d = p.as_dict()
    return all(d[s] == d[g.inv(s)] for s in p.domain)


def quasi_constant_terms(p: Pattern) -> list:
    """Every r such that p is nonconstant and constant on S minus r."""
    if is_constant(p):
        return []
    out = []
    for i, r in enumerate(p.domain):
        if len(set(p.values[:i] + p.values[i + 1:])) <= 1:
            out.append(r)
    return out


def quasi_constant_term(p: Pattern):
    """The nonconstant term of a quasi-constant pattern, else None.

    With ``|S| == 2`` both elements qualify; the one different from the
    identity is returned.
    """
    terms = quasi_constant_terms(p)
    if not terms:
        return None
    e = p.group.identity
    others = [r for r in terms if r != e]
    return others[0] if others else e


def pattern_leq(p: Pattern, q: Pattern) -> bool:
    """p <= q iff dom(p) is contained in dom(q) and q restricts to p."""
    if p.group != q.group or p.k != q.k:
        raise DomainMismatchError("patterns over different groups or alphabets")
    if not p.domain.issubset(q.domain):
        return False
    qd = q.as_dict()
    return all(qd[s] == v for s, v in zip(p.domain, p.values))


def enumerate_patterns(domain: GroupSubset, k: int = 2) -> Iterator[Pattern]:
    """All k^|S| patterns on ``domain``, in lexicographic order of their strings."""
    for values in itertools.product(range(k), repeat=len(domain)):
        yield Pattern(domain, values, k)


def constant_pattern(domain: GroupSubset, b: int, k: int = 2) -> Pattern:
    return Pattern(domain, (b,) * len(domain), k)

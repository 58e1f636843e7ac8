"""Groups, elements and finite subsets.

Two carriers are supported:

* :class:`FreeAbelianGroup` of rank ``d``.  For ``d == 1`` elements are plain
  ``int``; for ``d >= 2`` they are ``tuple`` of ints.
* :class:`FiniteGroup` given by a Cayley table; elements are indices.

In both cases Python's native ordering on the element payload is the
canonical order (lexicographic on tuples, index order on finite groups).
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DomainError, DomainMismatchError, OutOfWindowError

Element = Hashable


class Group:
    """Operational group interface: identity, mul, inv."""

    identity: Element

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    def power(self, g, n: int):
        if n < 0:
            return self.power(self.inv(g), -n)
        out = self.identity
        for _ in range(n):
            out = self.mul(out, g)
        return out

    def parse_element(self, text: str):
        raise NotImplementedError

    def format_element(self, g) -> str:
        return str(g)


@dataclass(frozen=True)
class FreeAbelianGroup(Group):
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"rank must be >= 1, got {self.d}")

    @property
    def identity(self):
        return 0 if self.d == 1 else (0,) * self.d

    def mul(self, g, h):
        if self.d == 1:
            return g + h
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        if self.d == 1:
            return -g
        return tuple(-a for a in g)

    def power(self, g, n: int):
        if self.d == 1:
            return n * g
        return tuple(n * a for a in g)

    def contains(self, g) -> bool:
        if self.d == 1:
            return isinstance(g, int) and not isinstance(g, bool)
        return isinstance(g, tuple) and len(g) == self.d and all(isinstance(a, int) for a in g)

    def parse_element(self, text: str):
        text = text.strip()
        if self.d == 1:
            return int(text)
        parts = [int(x) for x in text.strip("()[] ").split(",")]
        if len(parts) != self.d:
            raise DomainError(f"expected {self.d} coordinates in {text!r}")
        return tuple(parts)

    def format_element(self, g) -> str:
        if self.d == 1:
            return str(g)
        return "(" + ",".join(map(str, g)) + ")"

    def coerce(self, g):
        """Accept lists from JSON as tuple elements."""
        if self.d == 1:
            return int(g)
        return tuple(int(a) for a in g)

    def spec(self) -> str:
        return f"zd:{self.d}"

    def __str__(self):
        return "Z" if self.d == 1 else f"Z^{self.d}"


Z = FreeAbelianGroup(1)


@dataclass(frozen=True)
class FiniteGroup(Group):
    """Group given by a Cayley table ``table[g][h] = g*h`` on indices."""

    table: tuple
    identity: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in self.table))
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise DomainError("Cayley table must be a nonempty square")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if self.table[g][h] == self.identity]
            if len(hs) != 1:
                raise DomainError(f"element {g} has no unique inverse")
            inv.append(hs[0])
        object.__setattr__(self, "_inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return self._inverse[g]

    def contains(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self.order

    def parse_element(self, text: str):
        g = int(text)
        if not self.contains(g):
            raise DomainError(f"{g} is not an element of a group of order {self.order}")
        return g

    def coerce(self, g):
        return self.parse_element(str(g))

    def check_axioms(self) -> None:
        """Exhaustive check of the group axioms; raises DomainError on failure."""
        n, e, t = self.order, self.identity, self.table
        for row in t:
            if sorted(row) != list(range(n)):
                raise DomainError("table rows are not permutations")
        for j in range(n):
            if sorted(t[i][j] for i in range(n)) != list(range(n)):
                raise DomainError("table columns are not permutations")
        for g in range(n):
            if t[e][g] != g or t[g][e] != g:
                raise DomainError(f"identity {e} does not act trivially on {g}")
            if self.inv(self.inv(g)) != g or t[g][self.inv(g)] != e:
                raise DomainError(f"bad inverse for {g}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise DomainError(f"not associative at {(a, b, c)}")

    def element_order(self, g) -> int:
        k, h = 1, g
        while h != self.identity:
            h, k = self.mul(h, g), k + 1
        return k

    def to_json(self) -> dict:
        return {"order": self.order, "identity": self.identity, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "FiniteGroup":
        g = cls(tuple(map(tuple, data["table"])), int(data.get("identity", 0)), name=name)
        if "order" in data and int(data["order"]) != g.order:
            raise DomainError("declared order does not match the table")
        g.check_axioms()
        return g

    def spec(self) -> str:
        return f"cayley:{self.name or 'inline'}"

    def __str__(self):
        return self.name or f"finite group of order {self.order}"


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Elements are indexed i * |h| + j for the pair (i, j)."""
    m = h.order
    table = tuple(
        tuple(g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m))
        for a in range(g.order * m)
    )
    return FiniteGroup(table, g.identity * m + h.identity, name=f"{g.name}x{h.name}")


def symmetric(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order; index 0 is the identity."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    return FiniteGroup(table, 0, name=f"S{n}")


def bundled_groups() -> dict[str, FiniteGroup]:
    out = {}
    for entry in resources.files("idemca").joinpath("fixtures").iterdir():
        if entry.name.endswith(".json"):
            name = entry.name[:-5]
            out[name] = FiniteGroup.from_json(json.loads(entry.read_text()), name=name)
    return out


def parse_group(spec: str) -> Group:
    """Parse ``zd:<d>`` or ``cayley:<path-or-bundled-name>``."""
    kind, _, arg = spec.partition(":")
    if kind == "zd":
        return FreeAbelianGroup(int(arg or 1))
    if kind == "cayley":
        path = Path(arg)
        if path.exists():
            return FiniteGroup.from_json(json.loads(path.read_text()), name=path.stem)
        bundled = bundled_groups()
        if arg in bundled:
            return bundled[arg]
        raise DomainError(f"no Cayley table at {arg!r} and no bundled group of that name")
    raise DomainError(f"unknown group spec {spec!r}")


@dataclass(frozen=True)
class GroupSubset:
    """An ordered finite subset of a group.

    ``members`` keeps the order it was given in; use :meth:`canonical` for
    sorted order.  Equality is structural (order-sensitive); use
    :meth:`as_set` or :meth:`same_set` for set comparisons.
    """

    group: Group
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if len(set(members)) != len(members):
            raise DomainError(f"duplicate elements in subset {members}")
        for g in members:
            if not self.group.contains(g):
                raise DomainError(f"{g!r} is not an element of {self.group}")

    @classmethod
    def canonical(cls, group: Group, elements: Iterable) -> "GroupSubset":
        return cls(group, tuple(sorted(set(elements))))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in self.as_set()

    def index(self, g) -> int:
        return self.members.index(g)

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def same_set(self, other: "GroupSubset") -> bool:
        return self.group == other.group and self.as_set() == other.as_set()

    def issubset(self, other: "GroupSubset") -> bool:
        return self.group == other.group and self.as_set() <= other.as_set()

    def sorted(self) -> "GroupSubset":
        return GroupSubset.canonical(self.group, self.members)

    def union(self, *others: "GroupSubset") -> "GroupSubset":
        elems = set(self.members)
        for o in others:
            _same_group(self, o)
            elems |= o.as_set()
        return GroupSubset.canonical(self.group, elems)

    def is_symmetric(self) -> bool:
        return set_inverse(self).as_set() == self.as_set()

    def span(self) -> int:
        """max - min + 1, for subsets of Z."""
        if not (isinstance(self.group, FreeAbelianGroup) and self.group.d == 1):
            raise DomainError("span is defined for subsets of Z only")
        return max(self.members) - min(self.members) + 1

    def format(self) -> str:
        sep = ";" if isinstance(self.group, FreeAbelianGroup) and self.group.d > 1 else ","
        return sep.join(self.group.format_element(g) for g in self.members)


def _same_group(a: GroupSubset, b: GroupSubset) -> None:
    if a.group != b.group:
        raise DomainMismatchError(f"subsets live in different groups: {a.group} vs {b.group}")


def parse_subset(group: Group, text: str, canonical: bool = False) -> GroupSubset:
    """Parse ``-2,-1,0,1,2`` or ``(0,0);(1,0)``; display order is kept unless ``canonical``."""
    text = text.strip()
    if isinstance(group, FreeAbelianGroup) and group.d > 1:
        items = re.findall(r"\(([^)]*)\)", text) or [t for t in text.split(";") if t.strip()]
    else:
        items = [t for t in text.replace(";", ",").split(",") if t.strip()]
    elems = [group.parse_element(t) for t in items]
    if canonical:
        return GroupSubset.canonical(group, elems)
    return GroupSubset(group, tuple(elems))


def interval(lo: int, hi: int) -> GroupSubset:
    """The subset {lo, ..., hi} of Z."""
    return GroupSubset(Z, tuple(range(lo, hi + 1)))


def set_product(t: GroupSubset, s: GroupSubset) -> GroupSubset:
    _same_group(t, s)
    g = t.group
    return GroupSubset.canonical(g, (g.mul(a, b) for a in t for b in s))


def set_inverse(s: GroupSubset) -> GroupSubset:
    return GroupSubset.canonical(s.group, (s.group.inv(g) for g in s))


def centered_restriction(z: Mapping, s, S: GroupSubset) -> tuple:
    """Values of ``s^{-1} . z`` on ``S``, i.e. ``t -> z(st)`` in the order of ``S``."""
    g = S.group
    out = []
    for t in S:
        st = g.mul(s, t)
        if st not in z:
            raise OutOfWindowError(f"{st!r} lies outside the fragment's window")
        out.append(z[st])
    return tuple(out)


def positions(window: GroupSubset, s, S: GroupSubset) -> list[int]:
    """Indices into ``window`` of ``sS`` (in the order of ``S``)."""
    g = S.group
    idx = {w: i for i, w in enumerate(window)}
    try:
        return [idx[g.mul(s, t)] for t in S]
    except KeyError as exc:
        raise OutOfWindowError(f"{exc.args[0]!r} lies outside the window") from None


def as_subset(group: Group, elements: Sequence | GroupSubset) -> GroupSubset:
    if isinstance(elements, GroupSubset):
        return elements
    return GroupSubset(group, tuple(elements))

"""The natural partial order on idempotent CA.

For idempotents, tau <= sigma iff tau.sigma = sigma.tau = tau.  Everything
here is decided through the star composition of local rules; the
image/kernel characterisation is an independent cross-check on Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import networkx as nx

from .errors import DomainError, NotIdempotentError, SizeCapError, UnsupportedCarrierError
from .group import FreeAbelianGroup, Group, GroupSubset, Z
from .idempotency import classify, is_idempotent_by_composition
from .pattern import Pattern, constant_pattern, pattern_leq
from .rule import LocalRule, PatternCA, evaluate, identity_rule, rules_equal, star
from .shiftspace import count_words, sft_subset

VIA = "CompositionBothWays"


@dataclass(frozen=True)
class Crosscheck:
    image_inclusion: bool
    kernel_inclusion: bool


@dataclass(frozen=True)
class OrderVerdict:
    leq: bool
    via: str = VIA
    crosscheck: Crosscheck | None = None

    def to_json(self) -> dict:
        out = {"leq": self.leq, "via": self.via}
        if self.crosscheck is not None:
            out["crosscheck"] = {
                "image_inclusion": self.crosscheck.image_inclusion,
                "kernel_inclusion": self.crosscheck.kernel_inclusion,
            }
        return out


def require_idempotent(t: PatternCA) -> None:
    if not classify(t).idempotent:
        raise NotIdempotentError(f"{t} is not idempotent; the natural order is defined on idempotents")


def rule_leq(r1: LocalRule, r2: LocalRule, cap: int | None = None) -> bool:
    """r1 <= r2 for rules already known to be idempotent."""
    return rules_equal(star(r1, r2, cap), r1, cap) and rules_equal(star(r2, r1, cap), r1, cap)


def natural_leq(t1: PatternCA, t2: PatternCA, cap: int | None = None) -> OrderVerdict:
    require_idempotent(t1)
    require_idempotent(t2)
    return OrderVerdict(rule_leq(t1.rule, t2.rule, cap))


def kernel_leq(t1: PatternCA, t2: PatternCA, cap: int | None = None) -> bool:
    """tau1 = tau1 tau2, equivalently ker(tau2) is contained in ker(tau1)."""
    require_idempotent(t1)
    require_idempotent(t2)
    return rules_equal(star(t1.rule, t2.rule, cap), t1.rule, cap)


def constant_below(b: int, t: PatternCA) -> bool:
    """The constant CA with value b lies below t iff p is not b^S."""
    require_idempotent(t)
    return t.pattern != constant_pattern(t.domain, b, t.pattern.k)


def fixes_constant(t: PatternCA, b: int) -> bool:
    """tau(b^G) = b^G, by evaluating the local rule on the constant input."""
    return evaluate(t.rule, (b,) * len(t.domain)) == b


def order_char_crosscheck(t1: PatternCA, t2: PatternCA, cap: int | None = None) -> OrderVerdict:
    """Natural order together with image and kernel inclusion; raises if they disagree."""
    g = t1.pattern.group
    if not (isinstance(g, FreeAbelianGroup) and g.d == 1):
        raise UnsupportedCarrierError("the image/kernel crosscheck is implemented over Z only")
    verdict = natural_leq(t1, t2, cap)
    check = Crosscheck(sft_subset(t1.pattern, t2.pattern, cap), kernel_leq(t1, t2, cap))
    if verdict.leq != (check.image_inclusion and check.kernel_inclusion):
        raise AssertionError(f"image/kernel characterisation contradicts composition for {t1}, {t2}")
    return OrderVerdict(verdict.leq, VIA, check)


def comparability_necessary_conditions(t1: PatternCA, t2: PatternCA, cap: int | None = None) -> bool:
    """If t1 <= t2 (and q(e) != a) then a = b and p <= q; returns whether that held."""
    if t2.pattern.at_identity == t1.write:
        raise DomainError("needs q(e) != a")
    if not natural_leq(t1, t2, cap).leq:
        return True
    return t1.write == t2.write and pattern_leq(t1.pattern, t2.pattern)


def strictness_check(t1: PatternCA, t2: PatternCA, length: int, cap: int | None = None) -> bool:
    """For t1 < t2 over Z: word counts of X_p never exceed X_q's and are smaller somewhere."""
    if rules_equal(t1.rule, t2.rule, cap) or not natural_leq(t1, t2, cap).leq:
        raise DomainError("strictness needs t1 < t2")
    pairs = [(count_words(t1.pattern, n), count_words(t2.pattern, n)) for n in range(1, length + 1)]
    return all(a <= b for a, b in pairs) and any(a < b for a, b in pairs)


def chain_family(s=1, n: int = 3, group: Group = Z, verify: bool = True) -> list[PatternCA]:
    """Constant-0 patterns on {e, s, ..., s^i}, write 1, for i = 1..n."""
    if s == group.identity:
        raise DomainError("the chain needs a nontrivial element")
    out = []
    for i in range(1, n + 1):
        domain = GroupSubset(group, tuple(group.power(s, j) for j in range(i + 1)))
        out.append(PatternCA(constant_pattern(domain, 0), 1))
    if verify:
        for t in out:
            require_idempotent(t)
        for a, b in zip(out, out[1:]):
            if not natural_leq(a, b).leq:
                raise AssertionError(f"chain broken between {a} and {b}")
    return out


def antichain_family(gs: Sequence, n: int | None = None, group: Group = Z, verify: bool = True) -> list[PatternCA]:
    """Symmetrical patterns on {e} + {g_j, g_j^-1 : j <= i}, 1 exactly at g_i and g_i^-1."""
    gs = list(gs)
    n = len(gs) if n is None else n
    if n > len(gs):
        raise DomainError("need at least n elements")
    e = group.identity
    for i, g in enumerate(gs[:n]):
        earlier = {h for x in gs[:i] for h in (x, group.inv(x))}
        if g == e or g in earlier:
            raise DomainError(f"element {g!r} is trivial or repeats an earlier element or inverse")
    out = []
    for i in range(n):
        members = {e} | {h for x in gs[: i + 1] for h in (x, group.inv(x))}
        domain = GroupSubset.canonical(group, members)
        ones = {gs[i], group.inv(gs[i])}
        out.append(PatternCA(Pattern(domain, tuple(1 if x in ones else 0 for x in domain)), 1))
    if verify:
        for t in out:
            require_idempotent(t)
        for i, a in enumerate(out):
            for b in out[i + 1:]:
                if natural_leq(a, b).leq or natural_leq(b, a).leq:
                    raise AssertionError(f"{a} and {b} are comparable")
    return out


Item = Union[PatternCA, tuple]


@dataclass
class Poset:
    labels: list[str]
    rules: list[LocalRule]
    edges: list[tuple[int, int]] = field(default_factory=list)  # (lower, upper) covering pairs
    failures: list[tuple[int, int, str]] = field(default_factory=list)

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, label in enumerate(self.labels):
            lines.append(f'  n{i} [label="{label}"];')
        for lo, hi in self.edges:
            lines.append(f"  n{lo} -> n{hi};")
        for a, b, msg in self.failures:
            lines.append(f'  // comparison n{a} vs n{b} failed: {msg}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse(items: Sequence[Item], include_identity: bool = False, cap: int | None = None) -> Poset:
    """Covering relation of the natural order on idempotent items.

    ``items`` are PatternCA or (label, LocalRule) pairs.  Pairs that hit
    the size cap are recorded in ``failures`` and left out.
    """
    labels, rules = [], []
    for it in items:
        if isinstance(it, PatternCA):
            require_idempotent(it)
            labels.append(str(it))
            rules.append(it.rule)
        else:
            label, r = it
            if not is_idempotent_by_composition(r, cap):
                raise NotIdempotentError(f"{label} is not idempotent")
            labels.append(label)
            rules.append(r)
    if include_identity:
        group = rules[0].group if rules else Z
        k = rules[0].k if rules else 2
        labels.append("id")
        rules.append(identity_rule(k=k, group=group))
    poset = Poset(labels, rules)
    order = nx.DiGraph()
    order.add_nodes_from(range(len(rules)))
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            if i == j:
                continue
            try:
                if rule_leq(ri, rj, cap) and not rule_leq(rj, ri, cap):
                    order.add_edge(i, j)
            except SizeCapError as exc:
                if i < j:
                    poset.failures.append((i, j, str(exc)))
    poset.edges = sorted(nx.transitive_reduction(order).edges())
    return poset

"""Deciding idempotency of pattern CA.

Three routes that must agree:

* :func:`is_idempotent_by_composition` compares ``mu * mu`` with ``mu`` on SS.
* :func:`witness_search` looks for a fragment x on SS with
  ``mu((s^-1 . x)|_S) = p(s)`` for every s in S; one exists iff the CA is
  not idempotent.
* :func:`classify` applies the structural criteria (singleton domain,
  constant, symmetrical, write symbol absent from p, quasi-constant
  trichotomy) and only falls back to composition when none applies.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DomainError, TheoremDisagreement
from .group import FiniteGroup, GroupSubset, positions, set_inverse, set_product
from .pattern import Pattern, is_constant, is_symmetrical, quasi_constant_terms
from .rule import LocalRule, PatternCA, _combine, decode, digit_columns, rules_equal, star


class Reason(str, Enum):
    COMPOSITION = "CompositionCheck"
    CONSTANT = "ConstantPattern"
    SYMMETRICAL = "SymmetricalPattern"
    AVOIDING_WRITE = "AvoidingWrite"
    QUASI_COND1 = "QuasiConstantCond1"
    QUASI_COND2 = "QuasiConstantCond2"
    QUASI_COND3 = "QuasiConstantCond3"
    QUASI_VIOLATED = "QuasiConstantViolated"
    SINGLETON = "SingletonDomain"


def crosscheck_default() -> bool:
    return os.environ.get("IDEMCA_CROSSCHECK", "1") != "0"


@dataclass(frozen=True)
class Witness:
    """A fragment on SS certifying non-idempotency."""

    window: GroupSubset
    values: tuple

    def as_dict(self) -> dict:
        return dict(zip(self.window.members, self.values))

    def satisfies_equation(self, t: PatternCA) -> bool:
        x, p, S = self.as_dict(), t.pattern, t.domain
        g = S.group
        return all(t.rule([x[g.mul(s, u)] for u in S]) == p(s) for s in S)

    def satisfies_consequences(self, t: PatternCA) -> bool:
        """x|_S != p, x(e) = p(e), and p sits at some t != e."""
        x, p, S = self.as_dict(), t.pattern, t.domain
        g = S.group
        e = g.identity
        at = lambda s: tuple(x[g.mul(s, u)] for u in S)  # noqa: E731
        return (
            at(e) != p.values
            and x[e] == p.at_identity
            and any(at(s) == p.values for s in S if s != e)
        )

    def to_json(self) -> dict:
        return {
            "window": [list(g) if isinstance(g, tuple) else g for g in self.window],
            "values": list(self.values),
        }


@dataclass(frozen=True)
class IdempotenceVerdict:
    idempotent: bool
    reason: Reason
    witness: Witness | None = None
    nonconstant_term: object = None

    def to_json(self) -> dict:
        out = {"idempotent": self.idempotent, "reason": self.reason.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.nonconstant_term is not None:
            out["nonconstant_term"] = self.nonconstant_term
        return out


def composition_window(r: LocalRule) -> GroupSubset:
    return r.memory.union(set_product(r.memory, r.memory))


def is_idempotent_by_composition(r: LocalRule, cap: int | None = None) -> bool:
    return rules_equal(star(r, r, cap), r, cap)


def witness_search(t: PatternCA, cap: int | None = None) -> Witness | None:
    """Lexicographically first x on SS solving the witness equation, if any."""
    S, p, r = t.domain, t.pattern, t.rule
    SS = set_product(S, S)
    cols = digit_columns(len(SS), p.k, cap)
    ok = np.ones(len(cols[0]), dtype=bool)
    for s, target in zip(S, p.values):
        idx = _combine([cols[i] for i in positions(SS, s, S)], p.k)
        ok &= r.table[idx] == target
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return Witness(SS, decode(int(hits[0]), len(SS), p.k))


def quasi_constant_criterion(p: Pattern, a: int, r) -> tuple[bool, Reason]:
    """The three-way criterion for a quasi-constant p with nonconstant term r."""
    g = p.group
    e = g.identity
    if a not in p.values:
        return True, Reason.QUASI_COND1
    if r != e and g.mul(r, r) in p.domain:
        return True, Reason.QUASI_COND2
    if r == e and p.domain.is_symmetric():
        return True, Reason.QUASI_COND3
    return False, Reason.QUASI_VIOLATED


def _structural(t: PatternCA) -> tuple[bool, Reason, object] | None:
    p, a = t.pattern, t.write
    if len(p.domain) == 1:
        return True, Reason.SINGLETON, None
    if is_constant(p):
        return True, Reason.CONSTANT, None
    if is_symmetrical(p):
        return True, Reason.SYMMETRICAL, None
    if a not in p.values:
        return True, Reason.AVOIDING_WRITE, None
    terms = quasi_constant_terms(p)
    if terms:
        e = p.group.identity
        verdicts = {r: quasi_constant_criterion(p, a, r) for r in terms}
        if len({v[0] for v in verdicts.values()}) != 1:
            raise TheoremDisagreement(f"nonconstant-term candidates disagree for {t}")
        r = next((r for r in terms if r != e), e)
        idem, reason = verdicts[r]
        return idem, reason, r
    return None


def classify(t: PatternCA, crosscheck: bool | None = None, cap: int | None = None) -> IdempotenceVerdict:
    """Verdict from the first applicable criterion, else by composition.

    With ``crosscheck`` (default: on unless IDEMCA_CROSSCHECK=0) every
    structural verdict is re-derived by composition and a mismatch raises
    :class:`TheoremDisagreement`.
    """
    crosscheck = crosscheck_default() if crosscheck is None else crosscheck
    return _classify(t, crosscheck, cap)


@lru_cache(maxsize=4096)
def _classify(t: PatternCA, crosscheck: bool, cap: int | None) -> IdempotenceVerdict:
    found = _structural(t)
    if found is None:
        idem, reason, r = is_idempotent_by_composition(t.rule, cap), Reason.COMPOSITION, None
    else:
        idem, reason, r = found
        if crosscheck and is_idempotent_by_composition(t.rule, cap) != idem:
            raise TheoremDisagreement(f"{reason.value} says idempotent={idem} for {t}")
    witness = None if idem else witness_search(t, cap)
    return IdempotenceVerdict(idem, reason, witness, r)


def is_idempotent(t: PatternCA) -> bool:
    return classify(t).idempotent


def constructive_witness(t: PatternCA) -> Witness | None:
    """The explicit counterexample fragment for a failing quasi-constant pattern.

    For a nonconstant term r != e: p(e) everywhere on SS except p(r) at r^2.
    For r = e: pick k in S with k^-1 not in S; p(e) at e and k, p(k) elsewhere.
    """
    p, a = t.pattern, t.write
    terms = quasi_constant_terms(p)
    if not terms:
        return None
    g = p.group
    e = g.identity
    r = next((r for r in terms if r != e), e)
    if quasi_constant_criterion(p, a, r)[0]:
        return None
    SS = set_product(p.domain, p.domain)
    if r != e:
        r2 = g.mul(r, r)
        values = tuple(p(r) if s == r2 else p.at_identity for s in SS)
    else:
        inverse = set_inverse(p.domain).as_set()
        k = next(s for s in p.domain if s not in inverse)  # k^-1 not in S
        values = tuple(p.at_identity if s in (e, k) else p(k) for s in SS)
    return Witness(SS, values)


def fix_equals_subshift_check(t: PatternCA, probe) -> bool:
    """Fix(tau) equals the p-avoiding configurations on a finite probe.

    ``probe`` is a :class:`FiniteGroup` containing the domain, or an int n
    meaning all n-periodic points of Z.
    """
    if isinstance(probe, FiniteGroup):
        from .oracle import avoiding_set, fix_set

        return fix_set(t.rule, probe) == avoiding_set(t.pattern, probe)
    if isinstance(probe, int):
        from .shiftspace import apply_periodic_batch, cyclic_words, occurs_cyclically_batch

        words = cyclic_words(probe, t.pattern.k)
        fixed = np.all(apply_periodic_batch(t.rule, words) == words, axis=1)
        return bool(np.array_equal(fixed, ~occurs_cyclically_batch(t.pattern, words)))
    raise DomainError(f"unsupported probe {probe!r}")

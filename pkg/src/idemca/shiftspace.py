"""One-dimensional SFT analytics for X_p with p a pattern over S in Z.

Words are tuples of symbols.  A pattern on S with span m = max S - min S + 1
is read as a constraint on length-m words at the offsets ``s - min S``;
offsets not in S are unconstrained.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import networkx as nx
import numpy as np

from .errors import ConvergenceError, DomainError, UnsupportedCarrierError
from .group import FreeAbelianGroup
from .pattern import Pattern
from .rule import LocalRule, _combine, check_size


def _require_z(p) -> None:
    g = p.group if isinstance(p, Pattern) else p.memory.group
    if not (isinstance(g, FreeAbelianGroup) and g.d == 1):
        raise UnsupportedCarrierError("shift-space analytics are implemented for Z only")


def _offsets(p: Pattern) -> list[tuple[int, int]]:
    lo = min(p.domain)
    return [(s - lo, v) for s, v in zip(p.domain, p.values)]


def occurs_at(p: Pattern, word: Sequence[int], start: int) -> bool:
    return all(word[start + o] == v for o, v in _offsets(p))


@dataclass
class DeBruijnGraph:
    """Vertices are words of length m-1, edges words of length m (m >= 1)."""

    m: int
    k: int
    vertices: list
    edges: list

    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def adjacency(self) -> np.ndarray:
        idx = self.index()
        M = np.zeros((len(self.vertices), len(self.vertices)))
        for w in self.edges:
            M[idx[w[:-1]], idx[w[1:]]] += 1
        return M

    def digraph(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from((w[:-1], w[1:], {"word": w}) for w in self.edges)
        return G

    def trimmed(self) -> "DeBruijnGraph":
        """Iteratively drop vertices with no incoming or no outgoing edge."""
        vertices, edges = set(self.vertices), list(self.edges)
        while True:
            heads = {w[1:] for w in edges}
            tails = {w[:-1] for w in edges}
            keep = vertices & heads & tails
            edges = [w for w in edges if w[:-1] in keep and w[1:] in keep]
            if keep == vertices:
                break
            vertices = keep
        return DeBruijnGraph(self.m, self.k, sorted(vertices), sorted(edges))


def build_graph(p: Pattern, window: int | None = None, trim: bool = True, cap: int | None = None) -> DeBruijnGraph:
    """Graph of X_p on length-``window`` words (default: the span of p)."""
    _require_z(p)
    m = p.domain.span()
    window = m if window is None else window
    if window < m:
        raise DomainError(f"window {window} is shorter than the pattern span {m}")
    check_size(p.k, window, cap)
    edges = [
        w
        for w in itertools.product(range(p.k), repeat=window)
        if not any(occurs_at(p, w, j) for j in range(window - m + 1))
    ]
    vertices = sorted({w[:-1] for w in edges} | {w[1:] for w in edges})
    graph = DeBruijnGraph(window, p.k, vertices, edges)
    return graph.trimmed() if trim else graph


def full_shift_graph(k: int = 2) -> DeBruijnGraph:
    return DeBruijnGraph(1, k, [()], [(a,) for a in range(k)])


def count_words(p: Pattern, n: int) -> int:
    """Number of length-n words occurring in points of X_p."""
    if n < 1:
        raise DomainError("word length must be >= 1")
    return count_graph_words(build_graph(p), n)


def count_graph_words(graph: DeBruijnGraph, n: int) -> int:
    m = graph.m
    if n < m - 1:
        return len({v[:n] for v in graph.vertices})
    idx = graph.index()
    counts = [1] * len(graph.vertices)
    for _ in range(n - (m - 1)):
        nxt = [0] * len(counts)
        for w in graph.edges:
            nxt[idx[w[1:]]] += counts[idx[w[:-1]]]
        counts = nxt
    return sum(counts)


class EntropyResult(NamedTuple):
    bits: float
    iterations: int

    @property
    def nats(self) -> float:
        return self.bits * math.log(2)


def _perron_root(B: np.ndarray, tol: float, max_iter: int) -> tuple[float, int]:
    """Spectral radius of an irreducible nonnegative matrix.

    Iterates on I + B, which is primitive, so periodic components converge
    too; the Rayleigh quotient of B at the iterate estimates the root.
    """
    n = len(B)
    v = np.full(n, 1.0 / math.sqrt(n))
    shifted = B + np.eye(n)
    prev = None
    for it in range(1, max_iter + 1):
        v = shifted @ v
        v /= np.linalg.norm(v)
        rho = float(v @ (B @ v))
        if prev is not None and abs(rho - prev) < tol:
            return rho, it
        prev = rho
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def graph_entropy(graph: DeBruijnGraph, tol: float = 1e-12, max_iter: int = 10**6) -> EntropyResult:
    if not graph.edges:
        raise DomainError("entropy is undefined for an empty graph")
    M = graph.adjacency()
    idx = graph.index()
    best, total = 0.0, 0
    for comp in nx.strongly_connected_components(graph.digraph()):
        ids = sorted(idx[v] for v in comp)
        B = M[np.ix_(ids, ids)]
        if not B.any():
            continue
        rho, it = _perron_root(B, tol, max_iter)
        best, total = max(best, rho), total + it
    return EntropyResult(math.log2(best), total)


def entropy(p: Pattern, tol: float = 1e-12, max_iter: int = 10**6) -> EntropyResult:
    """log2 of the spectral radius of X_p's trimmed graph."""
    return graph_entropy(build_graph(p), tol, max_iter)


def sft_subset(p: Pattern, q: Pattern, cap: int | None = None) -> bool:
    """X_p is contained in X_q, i.e. q occurs in no point of X_p."""
    _require_z(p)
    _require_z(q)
    window = max(p.domain.span(), q.domain.span())
    graph = build_graph(p, window=window, cap=cap)
    return not any(occurs_at(q, w, 0) for w in graph.edges)


def apply_periodic(r: LocalRule, w: Sequence[int]) -> tuple:
    """Image of the periodic point with period word w."""
    return tuple(int(v) for v in apply_periodic_batch(r, np.asarray([w], dtype=np.uint8))[0])


def apply_periodic_batch(r: LocalRule, words: np.ndarray) -> np.ndarray:
    """Row-wise :func:`apply_periodic`; output[i] reads w[(i + s) mod n] for s in S."""
    _require_z(r)
    if not len(r.memory):
        return np.full_like(words, r.table[0])
    rolled = [np.roll(words, -s, axis=1) for s in r.memory]
    return r.table[_combine(rolled, r.k)]


def cyclic_words(n: int, k: int = 2, cap: int | None = None) -> np.ndarray:
    """All k^n words of length n, shape (k^n, n)."""
    size = check_size(k, n, cap)
    codes = np.arange(size, dtype=np.int64)
    return np.stack([(codes // k ** (n - 1 - j)) % k for j in range(n)], axis=1).astype(np.uint8)


def occurs_cyclically_batch(p: Pattern, words: np.ndarray) -> np.ndarray:
    """Whether p occurs in the periodic point of each row."""
    _require_z(p)
    target = np.asarray(p.values, dtype=np.uint8)
    rolled = np.stack([np.roll(words, -s, axis=1) for s in p.domain], axis=2)
    return np.any(np.all(rolled == target, axis=2), axis=1)

"""Uniform hypergraphs: completeness, maximal cliques, spectra, file I/O.

A vertex set is complete when every k-subset of it is an edge (vacuously so
below size k), and a maximal clique is a complete set that no single vertex
can extend.  Vertex sets are plain ``frozenset[int]``; edges are canonical
sorted k-tuples so membership tests are single hash lookups.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Tuple

VertexSet = FrozenSet[int]


class ParseError(ValueError):
    """Malformed input text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def complement(members: Iterable[int], n: int) -> VertexSet:
    """Vertices of {0..n-1} not in `members`."""
    return frozenset(range(n)) - frozenset(members)


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on vertices 0..n-1, immutable after construction."""

    k: int
    n: int
    edges: FrozenSet[Tuple[int, ...]]

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError("uniformity k must be an integer >= 2")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("vertex count n must be an integer >= 1")
        canon = set()
        for edge in self.edges:
            tup = tuple(sorted(edge))
            if len(set(tup)) != self.k:
                raise ValueError(f"edge {tup} does not have {self.k} distinct vertices")
            if tup[0] < 0 or tup[-1] >= self.n:
                raise ValueError(f"edge {tup} has a vertex outside 0..{self.n - 1}")
            canon.add(tup)
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, k: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(k, n, frozenset(tuple(sorted(e)) for e in edges))

    @property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    @cached_property
    def _neighbor_map(self) -> dict:
        # Pairwise adjacency; meaningful only for k == 2.
        nb = {v: set() for v in range(self.n)}
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return {v: frozenset(s) for v, s in nb.items()}

    def _check_members(self, members: Iterable[int]) -> VertexSet:
        s = frozenset(members)
        for v in s:
            if not isinstance(v, int) or v < 0 or v >= self.n:
                raise ValueError(f"vertex {v!r} outside 0..{self.n - 1}")
        return s

    def is_complete(self, members: Iterable[int]) -> bool:
        """True iff every k-subset of the set is an edge (vacuous below size k)."""
        s = self._check_members(members)
        if len(s) < self.k:
            return True
        ordered = sorted(s)
        return all(c in self.edges for c in itertools.combinations(ordered, self.k))

    def extenders(self, members: Iterable[int]) -> VertexSet:
        """All vertices v outside the set with set+{v} still complete."""
        s = self._check_members(members)
        if not self.is_complete(s):
            raise ValueError("extenders requires a complete set")
        return frozenset(
            v for v in range(self.n) if v not in s and self.is_complete(s | {v})
        )

    def is_maximal_clique(self, members: Iterable[int]) -> bool:
        s = self._check_members(members)
        if not self.is_complete(s):
            return False
        return not any(
            self.is_complete(s | {v}) for v in range(self.n) if v not in s
        )


@dataclass(frozen=True)
class SpectrumReport:
    """Sizes of all maximal cliques plus one lex-smallest witness per size."""

    sizes: Tuple[int, ...]  # descending, one entry per maximal clique
    distinct_sizes: int
    witnesses: dict = field(compare=False)

    def __post_init__(self):
        if self.distinct_sizes != len(set(self.sizes)):
            raise ValueError("distinct_sizes does not match sizes")


def _lex_key(clique: VertexSet) -> List[int]:
    return sorted(clique)


def enumerate_maximal_cliques(H: Hypergraph) -> List[VertexSet]:
    """All maximal cliques, each once, ordered lexicographically.

    Recursion state is (current complete set, candidates, excluded) where
    candidates and excluded partition the extenders of the current set; by
    anti-monotonicity both shrink monotonically down each branch.  Pivoting is
    sound only in the pairwise case, so it is enabled for k == 2 alone.
    """
    k = H.k
    edges = H.edges
    results: List[VertexSet] = []

    def survivors(group: set, base: List[int], v: int) -> set:
        # group members that still extend base+{v}: every (k-2)-subset of base
        # must close into an edge with v and the member
        if k == 2:
            return group & H._neighbor_map[v]
        out = set(group)
        for combo in itertools.combinations(sorted(base), k - 2):
            prefix = combo + (v,)
            out = {u for u in out if tuple(sorted(prefix + (u,))) in edges}
            if not out:
                break
        return out

    def expand(base: List[int], cand: set, excl: set):
        if not cand and not excl:
            results.append(frozenset(base))
            return
        if k == 2:
            pivot = max(sorted(cand | excl), key=lambda p: len(cand & H._neighbor_map[p]))
            order = sorted(cand - H._neighbor_map[pivot])
        else:
            order = sorted(cand)
        for v in order:
            cand.discard(v)
            new_cand = survivors(cand, base, v)
            new_excl = survivors(excl, base, v)
            base.append(v)
            expand(base, new_cand, new_excl)
            base.pop()
            excl.add(v)

    expand([], set(range(H.n)), set())
    return sorted(results, key=_lex_key)


def brute_force_maximal_cliques(H: Hypergraph) -> List[VertexSet]:
    """Oracle: test all 2^n subsets straight against the definition."""
    if H.n > 20:
        raise ValueError(f"brute force refuses n = {H.n} > 20 (2^n subset scan)")
    out = []
    for mask in range(1 << H.n):
        s = frozenset(v for v in range(H.n) if mask >> v & 1)
        if not H.is_complete(s):
            continue
        if any(H.is_complete(s | {v}) for v in range(H.n) if v not in s):
            continue
        out.append(s)
    return sorted(out, key=_lex_key)


def clique_spectrum(H: Hypergraph) -> SpectrumReport:
    """Multiset of maximal-clique sizes with lex-smallest witnesses."""
    cliques = enumerate_maximal_cliques(H)
    sizes = tuple(sorted((len(c) for c in cliques), reverse=True))
    witnesses: dict = {}
    for c in cliques:  # lex order, so the first of each size is the witness
        witnesses.setdefault(len(c), c)
    return SpectrumReport(sizes, len(witnesses), witnesses)


def random_hypergraph(n: int, k: int, edge_probability: float, rng: random.Random) -> Hypergraph:
    """Each possible edge kept independently with the given probability."""
    edges = [
        combo
        for combo in itertools.combinations(range(n), k)
        if rng.random() < edge_probability
    ]
    return Hypergraph.from_edges(k, n, edges)


# ---------------------------------------------------------------------------
# Text format: header "k n", one edge per line, '#' comments, LF emitted.
# ---------------------------------------------------------------------------

def parse_hypergraph(text: str) -> Hypergraph:
    k = n = None
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if k is None:
            if len(tokens) != 2:
                raise ParseError("header must be exactly 'k n'", lineno)
            try:
                k, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError("header values must be base-10 integers", lineno) from None
            if k < 2 or n < 1:
                raise ParseError(f"invalid header k={k} n={n} (need k >= 2, n >= 1)", lineno)
            continue
        try:
            verts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError("edge vertices must be base-10 integers", lineno) from None
        if len(verts) != k or len(set(verts)) != k:
            raise ParseError(f"edge must list exactly {k} distinct vertices", lineno)
        bad = [v for v in verts if v < 0 or v >= n]
        if bad:
            raise ParseError(f"vertex {bad[0]} outside 0..{n - 1}", lineno)
        tup = tuple(sorted(verts))
        if tup in edges:
            raise ParseError(f"duplicate edge {' '.join(map(str, tup))}", lineno)
        edges[tup] = lineno
    if k is None:
        raise ParseError("missing 'k n' header", 1)
    return Hypergraph(k, n, frozenset(edges))


def serialize_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.k} {H.n}"]
    lines.extend(" ".join(map(str, e)) for e in sorted(H.edges))
    return "\n".join(lines) + "\n"

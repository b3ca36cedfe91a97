"""Tree extraction from a hypergraph's maximal-clique spectrum.

Given one representative maximal clique per distinct size, sorted by
decreasing size, the extractor grows a rooted tree one clique at a time: a
two-step descent walks down from the root as long as some child already owns
the new clique's slice of the current node's removed set, and attaches the
clique where no child matches.  Each node u keeps a surviving core A_u (its
clique intersected with its parent's core) and a removed set B_u (the rest of
the parent's core).  The resulting tree is depth- and degree-budgeted with
depth k-1 and offset equal to the slack C = n - #distinct sizes, and every
identity the construction promises is re-checked by an independent validator
that emits a machine-checkable certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .hypergraphs import (
    Hypergraph,
    SpectrumReport,
    VertexSet,
    clique_spectrum,
    random_hypergraph,
)
from .layered import LayeredParams, OrderedTree, validate_layered


@dataclass(frozen=True)
class CliqueChain:
    """Distinct-size clique representatives with their core/removed sets.

    cliques[i] is the representative of the i-th largest distinct size; A and
    B hold the per-node surviving core and removed set once a tree has been
    extracted (None straight after selection).  C is the slack n - len(cliques)
    allowance the caller granted.
    """

    cliques: Tuple[VertexSet, ...]
    A: Optional[Tuple[VertexSet, ...]]
    B: Optional[Tuple[VertexSet, ...]]
    C: int
    n: int


@dataclass(frozen=True)
class PathDecomposition:
    """Derived sets along one root-to-node path y_0..y_r.

    S[i] (i >= 1) is the slice of clique y_i inside the removed set of
    y_{i-1}; S[0] is empty.  U joins the deepest node's core with its own
    slice, W is the core one step above the deepest node.
    """

    path: Tuple[int, ...]
    S: Tuple[VertexSet, ...]
    U: VertexSet
    W: VertexSet


@dataclass(frozen=True)
class ExtractionResult:
    tree: OrderedTree
    chain: CliqueChain
    params: LayeredParams
    certificate: Tuple[PathDecomposition, ...]


def select_representatives(
    spectrum: SpectrumReport, H: Hypergraph, slack: Optional[int] = None
) -> CliqueChain:
    """One lex-smallest maximal clique per distinct size, largest first.

    With slack=None the tightest valid value n - #distinct sizes is used;
    an explicit slack must leave at least n - slack distinct sizes.
    """
    distinct = spectrum.distinct_sizes
    if slack is None:
        slack = H.n - distinct
    if distinct < H.n - slack:
        raise ValueError(
            f"insufficient distinct sizes: {distinct} < n - C = {H.n - slack}"
        )
    ordered = sorted(spectrum.witnesses, reverse=True)
    cliques = tuple(spectrum.witnesses[s] for s in ordered)
    return CliqueChain(cliques, None, None, slack, H.n)


def extract_tree(H: Hypergraph, slack: Optional[int] = None) -> ExtractionResult:
    """Run the descent construction and package the certified result.

    The output is a pure function of (H, slack).  A descent step requires the
    matching child to be unique; a tie means the construction's own invariant
    broke, which is reported loudly as a bug, never mapped to a user error.
    """
    spectrum = clique_spectrum(H)
    chain = select_representatives(spectrum, H, slack)
    X = chain.cliques
    V = H.vertices
    A: List[VertexSet] = [X[0]]
    B: List[VertexSet] = [V - X[0]]
    parents: List[int] = []
    children: Dict[int, List[int]] = {0: []}
    for i in range(1, len(X)):
        u = 0
        while True:
            slice_here = X[i] & B[u]
            matches = [w for w in children[u] if X[w] & B[u] == slice_here]
            if len(matches) > 1:
                raise RuntimeError(
                    f"descent invariant broke at node {u}: children {matches} share "
                    f"the removed-set slice {sorted(slice_here)}"
                )
            if not matches:
                break
            u = matches[0]
        parents.append(u)
        children[u].append(i)
        children[i] = []
        A.append(A[u] & X[i])
        B.append(A[u] - X[i])
    tree = OrderedTree(tuple(parents))
    full_chain = CliqueChain(X, tuple(A), tuple(B), chain.C, chain.n)
    certificate = tuple(
        _path_decomposition(full_chain, tree, node) for node in range(1, tree.size)
    )
    return ExtractionResult(tree, full_chain, LayeredParams(H.k - 1, chain.C), certificate)


def _root_path(tree: OrderedTree, node: int) -> Tuple[int, ...]:
    path = [node]
    while path[-1] != 0:
        path.append(tree.parent(path[-1]))
    return tuple(reversed(path))


def _path_decomposition(chain: CliqueChain, tree: OrderedTree, node: int) -> PathDecomposition:
    X, A, B = chain.cliques, chain.A, chain.B
    path = _root_path(tree, node)
    r = len(path) - 1
    S: List[VertexSet] = [frozenset()]
    for i in range(1, r + 1):
        S.append(X[path[i]] & B[path[i - 1]])
    return PathDecomposition(path, tuple(S), A[path[r]] | S[r], A[path[r - 1]])


# ---------------------------------------------------------------------------
# Certificate validation: everything is re-derived from (H, cliques, tree) and
# checked, never trusted; the stored certificate must additionally agree with
# the re-derivation.
# ---------------------------------------------------------------------------

CHECK_NAMES = (
    "chain_maximal",
    "chain_sizes",
    "sets_definitions",
    "sets_disjoint_from_clique",
    "sets_size_bound",
    "children_distinct",
    "slices_nonempty",
    "slices_disjoint",
    "path_partition",
    "clique_decomposition",
    "descendant_stability",
    "containment_chain",
    "distance_bound",
    "degree_bound",
    "stored_matches_derived",
)


def run_certificate_checks(result: ExtractionResult, H: Hypergraph) -> List[Tuple[str, List[str]]]:
    """All named checks with their violation lists (empty = pass), fixed order."""
    chain, tree = result.chain, result.tree
    X = chain.cliques
    t1 = len(X)
    V = H.vertices
    C = chain.C
    problems: Dict[str, List[str]] = {name: [] for name in CHECK_NAMES}

    if tree.size != t1:
        # Structurally broken certificate: nothing clique-indexed can be trusted.
        note = f"tree has {tree.size} vertices for {t1} chain cliques"
        problems["stored_matches_derived"].append(note)
        for name in CHECK_NAMES[:-1]:
            problems[name].append(f"not evaluated: {note}")
        return [(name, problems[name]) for name in CHECK_NAMES]

    for i, clique in enumerate(X):
        if not H.is_maximal_clique(clique):
            problems["chain_maximal"].append(f"X_{i} = {sorted(clique)} is not a maximal clique")

    if t1 < H.n - C:
        problems["chain_sizes"].append(f"only {t1} cliques for n - C = {H.n - C}")
    for i in range(1, t1):
        if len(X[i]) >= len(X[i - 1]):
            problems["chain_sizes"].append(f"sizes not strictly decreasing at X_{i}")
    for i in range(t1):
        if len(X[i]) < H.n - C - i:
            problems["chain_sizes"].append(f"|X_{i}| = {len(X[i])} < n - C - i = {H.n - C - i}")

    # Re-derive the per-node sets from the tree alone.
    A: List[VertexSet] = [X[0]]
    B: List[VertexSet] = [V - X[0]]
    for i in range(1, t1):
        p = tree.parent(i)
        A.append(A[p] & X[i])
        B.append(A[p] - X[i])

    if chain.A is None or chain.B is None:
        problems["sets_definitions"].append("chain carries no A/B sets")
    else:
        if chain.A[0] != X[0] or chain.B[0] != V - X[0]:
            problems["sets_definitions"].append("root sets are not V(X_0) and its complement")
        for i in range(1, t1):
            p = tree.parent(i)
            if chain.A[i] != chain.A[p] & X[i]:
                problems["sets_definitions"].append(f"A_{i} != A_parent & V(X_{i})")
            if chain.B[i] != chain.A[p] - chain.A[i]:
                problems["sets_definitions"].append(f"B_{i} != A_parent \\ A_{i}")

    stored_A = chain.A if chain.A is not None else tuple(A)
    stored_B = chain.B if chain.B is not None else tuple(B)

    for i in range(t1):
        if stored_B[i] & X[i]:
            problems["sets_disjoint_from_clique"].append(f"B_{i} meets V(X_{i})")
        if len(stored_B[i]) > C + i:
            problems["sets_size_bound"].append(f"|B_{i}| = {len(stored_B[i])} > C + i = {C + i}")

    for u in range(t1):
        seen: Dict[FrozenSet[int], int] = {}
        for w in tree.children[u]:
            piece = X[w] & stored_B[u]
            if not piece:
                problems["children_distinct"].append(f"child {w} of {u} has an empty slice")
            if piece in seen:
                problems["children_distinct"].append(
                    f"children {seen[piece]} and {w} of {u} share a slice"
                )
            seen[piece] = w

    derived_paths = tuple(
        _path_decomposition(CliqueChain(X, tuple(A), tuple(B), C, H.n), tree, node)
        for node in range(1, tree.size)
    )
    if len(result.certificate) != len(derived_paths):
        problems["stored_matches_derived"].append(
            f"certificate has {len(result.certificate)} paths, expected {len(derived_paths)}"
        )
    else:
        for stored, derived in zip(result.certificate, derived_paths):
            if stored != derived:
                problems["stored_matches_derived"].append(
                    f"stored path for node {derived.path[-1]} disagrees with re-derivation"
                )
    if chain.A is not None and (tuple(chain.A) != tuple(A) or tuple(chain.B) != tuple(B)):
        problems["stored_matches_derived"].append("stored A/B disagree with re-derivation")
    if result.params != LayeredParams(H.k - 1, C):
        problems["stored_matches_derived"].append("stored params are not (k-1, C)")

    for pd in result.certificate:
        y = pd.path
        malformed = (
            len(y) < 2
            or y[0] != 0
            or any(not 0 <= v < t1 for v in y)
            or any(v == 0 for v in y[1:])
            or any(tree.parent(y[i]) != y[i - 1] for i in range(1, len(y)))
            or len(pd.S) != len(y)
        )
        if malformed:
            problems["stored_matches_derived"].append(
                f"stored path {list(y)} is not a root path of the tree"
            )
            continue
        r = len(y) - 1
        node = y[-1]
        for i in range(1, r + 1):
            if not pd.S[i]:
                problems["slices_nonempty"].append(f"node {node}: S_{i} is empty")
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                if pd.S[i] & pd.S[j]:
                    problems["slices_disjoint"].append(f"node {node}: S_{i} meets S_{j}")
        pieces = [stored_A[y[r]]] + [stored_B[y[j]] for j in range(r, -1, -1)]
        union: set = set()
        total = 0
        for piece in pieces:
            union |= piece
            total += len(piece)
        if union != set(V) or total != H.n:
            problems["path_partition"].append(
                f"node {node}: A_yr with the B sets along the path do not partition V"
            )
        for j in range(1, r + 1):
            parts = [stored_A[y[j]]] + [pd.S[i] for i in range(1, j + 1)]
            union = set()
            total = 0
            for piece in parts:
                union |= piece
                total += len(piece)
            if union != set(X[y[j]]) or total != len(X[y[j]]):
                problems["clique_decomposition"].append(
                    f"node {node}: V(X_{{y_{j}}}) is not A plus the first {j} slices"
                )
        for a in range(r):
            u = y[a]
            for b in range(a + 1, r + 1):
                v = y[b]
                want = X[v] & stored_B[u]
                for w in tree.subtree(v):
                    if X[w] & stored_B[u] != want:
                        problems["descendant_stability"].append(
                            f"node {node}: descendant {w} of {v} shifts the slice in B_{u}"
                        )
        for j in range(1, r):
            union = set(pd.U) | set(pd.W)
            for i in range(1, r):
                if i != j:
                    union |= pd.S[i]
            if not union <= set(X[y[j - 1]]):
                problems["containment_chain"].append(
                    f"node {node}: U, W and the other slices leak out of V(X_{{y_{j - 1}}})"
                )

    params = LayeredParams(H.k - 1, C)
    for violation in validate_layered(tree, params):
        key = "distance_bound" if violation.condition == "depth" else "degree_bound"
        problems[key].append(str(violation))

    return [(name, problems[name]) for name in CHECK_NAMES]


def validate_certificate(result: ExtractionResult, H: Hypergraph) -> List[str]:
    """Flattened violations of all checks; empty means the certificate holds."""
    out = []
    for name, violations in run_certificate_checks(result, H):
        out.extend(f"{name}: {v}" for v in violations)
    return out


def certificate_document(result: ExtractionResult, H: Hypergraph) -> dict:
    """Serializable certificate with a verdict block, schema_version 1."""
    checks = run_certificate_checks(result, H)
    return {
        "schema_version": 1,
        "k": H.k,
        "n": H.n,
        "C": result.chain.C,
        "cliques": [sorted(c) for c in result.chain.cliques],
        "parents": list(result.tree.parents),
        "A": [sorted(s) for s in result.chain.A],
        "B": [sorted(s) for s in result.chain.B],
        "paths": [
            {
                "node": pd.path[-1],
                "path": list(pd.path),
                "S": [sorted(s) for s in pd.S],
                "U": sorted(pd.U),
                "W": sorted(pd.W),
            }
            for pd in result.certificate
        ],
        "checks": [
            {"name": name, "pass": not violations, "detail": violations[0] if violations else ""}
            for name, violations in checks
        ],
    }


# ---------------------------------------------------------------------------
# Union-completeness implication (the k+2 set principle behind the distance
# bound): if each of the k+1 leave-one-out unions is complete, the full union
# must be complete as well.
# ---------------------------------------------------------------------------

def completeness_implication(H: Hypergraph, sets: Sequence[VertexSet]) -> Tuple[bool, bool]:
    """(hypotheses_hold, conclusion_holds) for k+1 vertex sets.

    hypotheses_hold: every union leaving one set out is complete.
    conclusion_holds: the union of all k+1 sets is complete.
    """
    groups = [frozenset(s) for s in sets]
    if len(groups) != H.k + 1:
        raise ValueError(f"expected exactly k + 1 = {H.k + 1} sets, got {len(groups)}")
    hypotheses = True
    for i in range(len(groups)):
        union: set = set()
        for j, g in enumerate(groups):
            if j != i:
                union |= g
        if not H.is_complete(union):
            hypotheses = False
            break
    conclusion = H.is_complete(frozenset().union(*groups))
    return hypotheses, conclusion


@dataclass(frozen=True)
class TrialsSummary:
    trials: int
    hypotheses_held: int
    counterexamples: Tuple[dict, ...]


def implication_trials(k: int, n: int, trials: int, seed: int) -> TrialsSummary:
    """Randomized stress of the implication: zero counterexamples expected.

    Densities are skewed high so the hypotheses actually fire a useful
    fraction of the time.
    """
    rng = random.Random(seed)
    densities = (0.25, 0.5, 0.8, 0.95, 1.0)
    held = 0
    bad: List[dict] = []
    for _ in range(trials):
        H = random_hypergraph(n, k, rng.choice(densities), rng)
        sets = []
        for _ in range(k + 1):
            size = rng.randint(0, min(n, 4))
            sets.append(frozenset(rng.sample(range(n), size)))
        hypotheses, conclusion = completeness_implication(H, sets)
        if hypotheses:
            held += 1
            if not conclusion:
                bad.append(
                    {
                        "edges": sorted(H.edges),
                        "sets": [sorted(s) for s in sets],
                    }
                )
    return TrialsSummary(trials, held, tuple(bad))

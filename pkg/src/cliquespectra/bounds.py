"""Tower arithmetic and quantitative bounds.

Natural numbers are kept exact (arbitrary precision) while they fit under a
configurable bit cap; past the cap they escalate to certified enclosures whose
endpoints are power towers 2^2^...^top.  Every operation preserves
``lower <= true value <= upper``, and comparisons are three-valued: they answer
only when the enclosures certify an order (otherwise ``None``).

The module also hosts the iterated-logarithm helpers (log2 applied i times,
log-star) and the recursive upper bound on the size of depth/degree-budgeted
ordered trees, with its two published budget variants.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional, Union

DEFAULT_BIT_CAP = 1 << 20

# A bound is either an exact nonnegative int, or a pair (height, top) standing
# for 2^2^...^2^top with `height` twos.  Canonical towers keep height >= 1 and
# a top too large to materialize under the bit cap they were built with.
Bound = Union[int, tuple]


def _canon(height: int, top: int, bit_cap: int) -> Bound:
    """Collapse a (height, top) tower to an exact int while it fits the cap."""
    while height > 0 and top < bit_cap:
        top = 1 << top  # top+1 bits, still within the cap
        height -= 1
    return top if height == 0 else (height, top)


def _tower_vs_int(height: int, top: int, m: int) -> int:
    """Sign of (2^^height applied to top) minus m, never materializing huge values."""
    w = top
    for _ in range(height):
        if w >= m.bit_length():
            # 2^w >= 2^bitlen(m) > m, and further exponentiation only grows.
            return 1
        w = 1 << w
    return (w > m) - (w < m)


def _bound_cmp(a: Bound, b: Bound) -> int:
    """Exact three-way comparison of two bounds (they always compare)."""
    if isinstance(a, int):
        if isinstance(b, int):
            return (a > b) - (a < b)
        return -_tower_vs_int(b[0], b[1], a)
    if isinstance(b, int):
        return _tower_vs_int(a[0], a[1], b)
    h1, t1 = a
    h2, t2 = b
    if h1 == h2:
        return (t1 > t2) - (t1 < t2)
    if h1 < h2:
        return -_tower_vs_int(h2 - h1, t2, t1)
    return _tower_vs_int(h1 - h2, t1, t2)


def _bump(b: Bound) -> Bound:
    """A bound at least twice b: doubling an int, nudging a tower's top."""
    if isinstance(b, int):
        return 2 * b
    return (b[0], b[1] + 1)


_bound_key = functools.cmp_to_key(_bound_cmp)


def _pow2_bound(b: Bound, bit_cap: int) -> Bound:
    if isinstance(b, int):
        return _canon(1, b, bit_cap)
    return (b[0] + 1, b[1])


def _escalate(value: int, bit_cap: int) -> tuple:
    """Enclose an exact int that outgrew the cap between adjacent powers of two."""
    floor_exp = value.bit_length() - 1
    lo = _canon(1, floor_exp, bit_cap)
    if value & (value - 1) == 0:
        return (lo, lo)
    return (lo, _canon(1, floor_exp + 1, bit_cap))


def _bound_str(b: Bound) -> str:
    if isinstance(b, int):
        if b.bit_length() <= 64:
            return str(b)
        return f"~2^{b.bit_length() - 1}"
    height, top = b
    return "2^" * height + _bound_str(top)


@dataclass(frozen=True)
class TowerInt:
    """Exact-or-enclosed natural number.

    ``lower == upper`` as ints means the value is exact.  Tower endpoints with
    ``lower == upper`` certify the value without materializing it.
    """

    lower: Bound
    upper: Bound

    def __post_init__(self):
        if isinstance(self.lower, int) and self.lower < 0:
            raise ValueError("TowerInt values are nonnegative")
        if _bound_cmp(self.lower, self.upper) > 0:
            raise ValueError("enclosure lower bound exceeds upper bound")

    @classmethod
    def from_int(cls, value: int) -> "TowerInt":
        if not isinstance(value, int) or value < 0:
            raise ValueError("expected a nonnegative integer")
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.lower, int) and self.lower == self.upper

    @property
    def is_point(self) -> bool:
        """True when the enclosure pins one value (even a non-materializable one)."""
        return self.lower == self.upper

    @property
    def height(self) -> int:
        """Tower height of the upper bound (0 for exact values)."""
        return 0 if isinstance(self.upper, int) else self.upper[0]

    def to_int(self) -> int:
        if not self.is_exact:
            raise ValueError(f"not an exact value: {self.describe()}")
        return self.lower

    def cmp(self, other: "TowerInt | int") -> Optional[int]:
        """-1/0/1 when certified, None when the enclosures overlap."""
        other = as_tower(other)
        if _bound_cmp(self.upper, other.lower) < 0:
            return -1
        if _bound_cmp(self.lower, other.upper) > 0:
            return 1
        if self.is_point and other.is_point and _bound_cmp(self.lower, other.lower) == 0:
            return 0
        return None

    def certainly_le(self, other: "TowerInt | int") -> bool:
        return _bound_cmp(self.upper, as_tower(other).lower) <= 0

    def certainly_ge(self, other: "TowerInt | int") -> bool:
        return _bound_cmp(self.lower, as_tower(other).upper) >= 0

    def certainly_lt(self, other: "TowerInt | int") -> bool:
        return self.cmp(other) == -1

    def certainly_gt(self, other: "TowerInt | int") -> bool:
        return self.cmp(other) == 1

    def add(self, other: "TowerInt | int", bit_cap: int = DEFAULT_BIT_CAP) -> "TowerInt":
        other = as_tower(other)
        if self.is_exact and other.is_exact:
            s = self.lower + other.lower
            if s.bit_length() <= bit_cap:
                return TowerInt(s, s)
            return TowerInt(*_escalate(s, bit_cap))
        if isinstance(self.lower, int) and isinstance(other.lower, int):
            low = self.lower + other.lower
            lo = low if low.bit_length() <= bit_cap else _escalate(low, bit_cap)[0]
        else:
            lo = max(self.lower, other.lower, key=_bound_key)
        hi = _bump(max(self.upper, other.upper, key=_bound_key))
        if isinstance(hi, int) and hi.bit_length() > bit_cap:
            hi = _escalate(hi, bit_cap)[1]
        return TowerInt(lo, hi)

    def pow2(self, bit_cap: int = DEFAULT_BIT_CAP) -> "TowerInt":
        """2 raised to this value, exact while it fits under the cap."""
        return TowerInt(_pow2_bound(self.lower, bit_cap), _pow2_bound(self.upper, bit_cap))

    def __add__(self, other):
        return self.add(other)

    __radd__ = __add__

    def describe(self) -> str:
        if self.is_exact:
            return _bound_str(self.lower)
        if self.is_point:
            return _bound_str(self.lower)
        return f"[{_bound_str(self.lower)}, {_bound_str(self.upper)}]"

    def to_json(self) -> dict:
        """Deterministic JSON-friendly rendering."""
        if self.is_exact:
            v = self.lower
            out = {"kind": "exact", "bits": v.bit_length()}
            if v.bit_length() <= 4096:
                out["value"] = str(v)
            return out
        return {
            "kind": "tower",
            "lower": _bound_str(self.lower),
            "upper": _bound_str(self.upper),
            "height": self.height,
        }

    def __str__(self) -> str:
        return self.describe()


def as_tower(x: "TowerInt | int") -> TowerInt:
    return x if isinstance(x, TowerInt) else TowerInt.from_int(x)


def parse_tower_literal(text: str) -> TowerInt:
    """Parse "d" or a right-associated "2^2^...^d" power-tower literal."""
    parts = text.strip().split("^")
    try:
        top = int(parts[-1])
    except ValueError:
        raise ValueError(f"malformed tower literal: {text!r}") from None
    if top < 0:
        raise ValueError("tower literals denote nonnegative integers")
    if any(p != "2" for p in parts[:-1]):
        raise ValueError(f"tower literals must stack 2s: {text!r}")
    b = _canon(len(parts) - 1, top, DEFAULT_BIT_CAP)
    return TowerInt(b, b)


# ---------------------------------------------------------------------------
# Iterated logarithms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IterLogResult:
    """log2 applied `iterations` times, as a double."""

    iterations: int
    value: float


def _one_log(cur):
    """One base-2 log step; exact on integer powers of two, float otherwise."""
    if isinstance(cur, int) and cur & (cur - 1) == 0:
        return cur.bit_length() - 1
    return math.log2(cur)


def _log_star_number(x) -> int:
    if x < 1:
        raise ValueError("log_star is defined for values >= 1")
    count = 0
    cur = x
    while cur >= 2:
        cur = _one_log(cur)
        count += 1
    return count + 1


def _log_star_bound(b: Bound) -> int:
    if isinstance(b, int):
        return _log_star_number(b)
    height, top = b
    # Every level of the tower is an exact power of two: peel them off exactly.
    return height + _log_star_number(top)


def log_star(x: "TowerInt | int") -> int:
    """Smallest i >= 1 with log2 applied i times to x falling below 1."""
    if isinstance(x, TowerInt):
        lo = _log_star_bound(x.lower)
        hi = _log_star_bound(x.upper)
        if lo != hi:
            raise ValueError(
                f"cannot certify log_star for enclosure {x.describe()} ({lo} vs {hi})"
            )
        return lo
    return _log_star_number(x)


def iterated_log(x: "TowerInt | int", iterations: int) -> IterLogResult:
    """Apply log2 `iterations` times; valid while the trajectory stays >= 1."""
    if iterations < 0:
        raise ValueError("iteration count must be nonnegative")
    if iterations > log_star(x):
        raise ValueError(f"iterated_log undefined: {iterations} exceeds log_star")
    if isinstance(x, TowerInt):
        if not x.is_point:
            raise ValueError("iterated_log needs an exact or point value")
        b = x.lower
        height, cur = (0, b) if isinstance(b, int) else b
    else:
        height, cur = 0, x
    steps = iterations
    while steps > 0 and height > 0:
        height -= 1
        steps -= 1
    for _ in range(steps):
        cur = _one_log(cur)
    if height > 0 or (isinstance(cur, int) and cur.bit_length() > 1020):
        raise ValueError("result too large for a real-valued representation")
    return IterLogResult(iterations, float(cur))


# ---------------------------------------------------------------------------
# Size calculus for depth/degree-budgeted trees
# ---------------------------------------------------------------------------

def size_recurrence(offset: int, index: int, bit_cap: int = DEFAULT_BIT_CAP) -> TowerInt:
    """Value s_index of the greedy fill recurrence s_0 = 1, s_i = 2^(s_{i-1}+offset) + s_{i-1}.

    s_i is the vertex count of a depth-2 budgeted tree after its i-th root
    child has been inserted and greedily saturated with leaves.  The index is
    capped at 2^offset, the root's own degree budget.
    """
    if offset < 0:
        raise ValueError("offset must be >= 0")
    if not 0 <= index <= (1 << offset):
        raise ValueError(f"index must lie in [0, 2^{offset}]")
    s = TowerInt.from_int(1)
    for _ in range(index):
        s = s.add(offset, bit_cap).pow2(bit_cap).add(s, bit_cap)
    return s


def slack_lower_bound(n: "TowerInt | int") -> float:
    """log2(log_star(n+1)) - 1: how many clique sizes must be missing at n vertices."""
    n_plus_1 = as_tower(n).add(1) if isinstance(n, TowerInt) else n + 1
    return math.log2(log_star(n_plus_1)) - 1


def min_slack_for(n: "TowerInt | int", bit_cap: int = DEFAULT_BIT_CAP) -> int:
    """Smallest offset C >= 0 with n - C <= s_{2^C} in the greedy recurrence.

    Evaluation early-exits once a partial s_i already certifies s_i + C >= n,
    so astronomically large terms are never materialized.
    """
    target = as_tower(n)
    if _bound_cmp(target.lower, 1) < 0:
        raise ValueError("n must be >= 1")
    offset = 0
    while True:
        s = TowerInt.from_int(1)
        satisfied = False
        for _ in range(1 << offset):
            s = s.add(offset, bit_cap).pow2(bit_cap).add(s, bit_cap)
            if s.add(offset, bit_cap).certainly_ge(target):
                satisfied = True
                break
        if satisfied:
            return offset
        offset += 1


VARIANTS = ("claim23", "claim24")

DEFAULT_MAX_ROUNDS = 1 << 20


def tree_size_bound(
    depth: int,
    offset: "TowerInt | int",
    variant: str = "claim23",
    bit_cap: int = DEFAULT_BIT_CAP,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> TowerInt:
    """Recursive upper bound on the vertex count of a (depth, offset)-budgeted tree.

    Depth 1 is the exact closed form 2^offset + 1.  Deeper levels peel the root:
    each of the (at most 2^offset) root children gets a degree budget, the tree
    minus its root is bounded at depth-1 with an enlarged offset, and that size
    bound feeds the next child's budget.  The `variant` picks how the enlarged
    offset is formed: "claim23" uses 2^offset + offset + sum(budgets);
    "claim24" exponentiates that same quantity once more.  Both are valid upper
    bounds by construction; neither is claimed minimal.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    offset_t = as_tower(offset)
    if depth == 1:
        return offset_t.pow2(bit_cap).add(1, bit_cap)
    if not offset_t.is_exact or offset_t.to_int() >= max_rounds.bit_length():
        raise ValueError(
            "size bound recursion is not materializable: it would need "
            f"2^{offset_t.describe()} refinement rounds (cap {max_rounds})"
        )
    c = offset_t.to_int()
    rounds = 1 << c
    if rounds > max_rounds:
        raise ValueError(
            f"size bound recursion needs {rounds} refinement rounds (cap {max_rounds})"
        )
    pow2c = 1 << c
    budget = TowerInt.from_int(2 * pow2c)  # first root child sits at position 1
    budget_sum = TowerInt.from_int(0)
    inner_bound = None
    for _ in range(rounds):
        budget_sum = budget_sum.add(budget, bit_cap)
        inner_offset = budget_sum.add(pow2c + c, bit_cap)
        if variant == "claim24":
            inner_offset = inner_offset.pow2(bit_cap)
        inner_bound = tree_size_bound(depth - 1, inner_offset, variant, bit_cap, max_rounds)
        budget = inner_bound.add(pow2c + c, bit_cap).pow2(bit_cap)
    return inner_bound.add(pow2c, bit_cap)

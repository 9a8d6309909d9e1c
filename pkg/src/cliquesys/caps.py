"""Caps (point sets with no three collinear) in affine planes over GF(q)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional

import numpy as np

from .constructions import IncidencePlane
from .errors import InvariantViolation, RangeError
from .rng import make_rng

DEFAULT_CAP_BUDGET = 10**8


@dataclass
class CapReport:
    """Counts of caps by size, as unordered point sets (sizes 0, 1, 2 included)."""

    q: int
    counts: dict[int, int]
    max_cap_size: int
    bound_values: dict[int, Fraction]
    exhaustive: bool
    nodes: int
    caps: Optional[list[tuple[int, ...]]] = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def assembly(self) -> int:
        """q^2 + q^2(q^2-1) + q * max_{3<=t<=q+2} counts[t], the mixed-convention total."""
        q = self.q
        top = max((self.counts.get(t, 0) for t in range(3, q + 3)), default=0)
        return q * q + q * q * (q * q - 1) + q * top

    def bound_holds(self) -> dict[int, bool]:
        return {t: self.counts.get(t, 0) <= b for t, b in self.bound_values.items()}

    def rows(self) -> list[tuple[int, int, Optional[Fraction]]]:
        return [(t, self.counts[t], self.bound_values.get(t)) for t in sorted(self.counts)]


def _pair_lines(plane: IncidencePlane) -> list[list[int]]:
    """pair_line[a][b] = mask of the line through points a and b (0 on the diagonal)."""
    masks = plane.line_masks()
    P = plane.n_points
    table = [[0] * P for _ in range(P)]
    for (a, b), j in plane.line_of_pair().items():
        table[a][b] = table[b][a] = masks[j]
    return table


def enumerate_caps(
    plane: IncidencePlane,
    max_t: Optional[int] = None,
    count_only: bool = True,
    budget: int = DEFAULT_CAP_BUDGET,
) -> CapReport:
    """Count every cap once by extending in ascending point order.

    The forbidden mask of a partial cap holds every point on a line through
    two of its points; points below the last chosen one are never revisited.
    If the node budget runs out, counts are lower bounds and
    ``exhaustive`` is False.
    """
    q, P = plane.q, plane.n_points
    if max_t is None:
        max_t = P
    pair_line = _pair_lines(plane)
    counts = [0] * (P + 1)
    caps: Optional[list[tuple[int, ...]]] = None if count_only else []
    nodes = 0
    exhausted = False
    chosen: list[int] = []

    def extend(start: int, forbidden: int) -> None:
        nonlocal nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        counts[len(chosen)] += 1
        if caps is not None:
            caps.append(tuple(chosen))
        if len(chosen) >= max_t:
            return
        for v in range(start, P):
            if forbidden >> v & 1:
                continue
            new = forbidden
            row = pair_line[v]
            for u in chosen:
                new |= row[u]
            chosen.append(v)
            extend(v + 1, new)
            chosen.pop()
            if exhausted:
                return

    extend(0, 0)
    out = {t: c for t, c in enumerate(counts) if t <= max_t and (c or t <= q + 2)}
    bounds = {t: cap_bound_exact(q, t) for t in range(3, min(q + 2, max_t) + 1)}
    largest = max((t for t, c in out.items() if c), default=0)
    return CapReport(q, out, largest, bounds, not exhausted, nodes, caps)


def brute_force_cap_counts(plane: IncidencePlane) -> dict[int, int]:
    """Counts by size via filtering all 2^(q^2) subsets; independent of the DFS."""
    P = plane.n_points
    if P > 16:
        raise RangeError("brute force is limited to planes with at most 16 points")
    subsets = np.arange(1 << P, dtype=np.int64)
    ok = np.ones(1 << P, dtype=bool)
    bits = (subsets[:, None] >> np.arange(P)) & 1
    for line in plane.lines:
        ok &= bits[:, list(line)].sum(axis=1) <= 2
    sizes = bits.sum(axis=1)[ok]
    return {int(t): int(c) for t, c in zip(*np.unique(sizes, return_counts=True))}


def cap_bound_exact(q: int, t: int) -> Fraction:
    """q^4 * prod_{i=2}^{t-1} min(q^2, q^3 / C(i,2)) / t!, as an exact rational."""
    if not 3 <= t <= q + 2:
        raise RangeError(f"t must lie in [3, q+2] = [3, {q + 2}], got {t}")
    prod = Fraction(q**4)
    for i in range(2, t):
        prod *= min(Fraction(q * q), Fraction(q**3, comb(i, 2)))
    return prod / factorial(t)


def cap_bound(q: int, t: int) -> float:
    return float(cap_bound_exact(q, t))


@dataclass(frozen=True)
class MixingCheck:
    x_size: int
    y_size: int
    observed: int
    predicted: Fraction
    deviation: Fraction
    bound: float
    holds: bool


def mixing_check(plane: IncidencePlane, X: Iterable[int], Y: Iterable[int]) -> MixingCheck:
    """Compare incidences e(X, Y) with |X||Y|/q against sqrt(q |X| |Y|).

    The comparison is done in integers: (q e - |X||Y|)^2 < q^3 |X||Y|.
    """
    q = plane.q
    X = set(X)
    Y = sorted(set(Y))
    obs = sum(1 for j in Y for v in plane.lines[j] if v in X)
    xy = len(X) * len(Y)
    lhs = (q * obs - xy) ** 2
    rhs = q**3 * xy
    holds = lhs < rhs or (xy == 0 and lhs == 0)
    predicted = Fraction(xy, q)
    return MixingCheck(len(X), len(Y), obs, predicted, abs(obs - predicted), math.sqrt(q * xy), holds)


def random_mixing_samples(plane: IncidencePlane, count: int, seed: int) -> list[MixingCheck]:
    """Mixing checks on random (X, Y); each sample draws its own inclusion density."""
    rng = make_rng(seed, "mixing")
    P, L = plane.n_points, len(plane.lines)
    out = []
    for _ in range(count):
        px, py = rng.random(2)
        X = np.flatnonzero(rng.random(P) < px).tolist()
        Y = np.flatnonzero(rng.random(L) < py).tolist()
        out.append(mixing_check(plane, X, Y))
    return out


def singular_values(plane: IncidencePlane) -> np.ndarray:
    """Singular values of the point-line incidence matrix, descending."""
    P = plane.n_points
    inc = np.zeros((P, len(plane.lines)))
    for j, line in enumerate(plane.lines):
        inc[list(line), j] = 1.0
    gram = inc @ inc.T
    eig = np.linalg.eigvalsh(gram)[::-1]
    return np.sqrt(np.clip(eig, 0.0, None))


def second_singular_value(plane: IncidencePlane) -> float:
    return float(singular_values(plane)[1])


@dataclass(frozen=True)
class CapTrace:
    q: int
    seed: int
    cap: tuple[int, ...]
    rows: tuple[tuple[int, int, int], ...]  # (i, |Z_i|, |X_i|)


def greedy_cap_extension_trace(plane: IncidencePlane, seed: int = 0) -> CapTrace:
    """Grow a cap by uniformly random admissible points until none remain.

    With S_i the first i points, Z_i is the set of lines through two points
    of S_i and X_i the points on none of those lines.  A row (i, |Z_i|,
    |X_i|) is recorded for each i >= 2; |Z_i| = C(i,2) and
    |X_i| C(i,2) <= q^3 are checked on every row.
    """
    q, P = plane.q, plane.n_points
    rng = make_rng(seed, "caps")
    line_of = plane.line_of_pair()
    cap: list[int] = list(rng.choice(P, size=2, replace=False).tolist())
    blocked_lines: set[int] = {line_of[tuple(sorted(cap))]}
    blocked_pts = set(plane.lines[next(iter(blocked_lines))])
    rows = []
    while True:
        i = len(cap)
        admissible = [v for v in range(P) if v not in blocked_pts]
        if len(blocked_lines) != comb(i, 2):
            raise InvariantViolation(f"|Z_{i}| = {len(blocked_lines)} != C({i},2)")
        if len(admissible) * comb(i, 2) > q**3:
            raise InvariantViolation(f"|X_{i}| = {len(admissible)} exceeds q^3/C({i},2)")
        rows.append((i, len(blocked_lines), len(admissible)))
        if not admissible:
            break
        v = admissible[int(rng.integers(len(admissible)))]
        for u in cap:
            j = line_of[(min(u, v), max(u, v))]
            blocked_lines.add(j)
            blocked_pts.update(plane.lines[j])
        cap.append(v)
    return CapTrace(q, seed, tuple(cap), tuple(rows))

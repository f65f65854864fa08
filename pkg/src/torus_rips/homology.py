"""Betti numbers over GF(2) and exact integer homology via Smith normal form.

The GF(2) path is sparse column reduction with a pivot map and the standard
clearing optimization.  The integer path runs a fraction-free sparse
elimination on unit pivots first and finishes any leftover core with a dense
Smith normal form; all arithmetic is exact arbitrary-precision integers, so
overflow cannot occur and torsion is read off the invariant factors.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .complexes import FlagComplex, boundary_matrix
from .errors import BudgetError, TruncatedComplexError

DEFAULT_SNF_COLUMN_BUDGET = 200_000


@dataclass(frozen=True)
class BettiProfile:
    """Homology ranks of one complex, dimension by dimension.

    ``betti[d]`` is the unreduced Betti number in dimension d (so betti[0]
    counts connected components).  ``torsion[d]`` lists the nontrivial
    invariant factors of H_d and is all-empty for GF(2) runs.  ``euler`` is
    the Euler characteristic of the full complex when it is known, else None.
    ``truncated_at`` is None when the profile covers every dimension of a
    completely enumerated complex, else the deepest reported dimension.
    """

    coefficients: str
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int | None
    truncated_at: int | None

    def betti_at(self, d: int) -> int:
        return self.betti[d] if 0 <= d < len(self.betti) else 0

    def covers(self, d: int) -> bool:
        """True when the profile faithfully reports homology through dimension d."""
        return d < len(self.betti) and (self.truncated_at is None or d <= self.truncated_at)


def gf2_rank(
    columns: Sequence[Sequence[int]],
    skip: frozenset[int] = frozenset(),
    deadline: float | None = None,
) -> tuple[int, frozenset[int]]:
    """Rank of a GF(2) matrix given as sparse columns, plus its pivot rows.

    Standard left-to-right reduction: each column is XOR-reduced against the
    recorded pivot columns until it gains a fresh pivot row or vanishes.
    Columns whose index is in ``skip`` are known in advance to reduce to zero
    (the clearing optimization) and are not touched.
    """
    pivots: dict[int, set[int]] = {}
    rank = 0
    for j, col in enumerate(columns):
        if j in skip:
            continue
        if deadline is not None and j % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetError(f"time budget exceeded during GF(2) reduction at column {j}")
        cur = set(col)
        while cur:
            low = max(cur)
            other = pivots.get(low)
            if other is None:
                pivots[low] = cur
                rank += 1
                break
            cur ^= other
    return rank, frozenset(pivots)


def _require_depth(cx: FlagComplex, need: int, what: str) -> None:
    if not cx.complete and cx.top_dim < need:
        raise TruncatedComplexError(
            f"{what} needs enumeration through dimension {need}, "
            f"but the complex is truncated at {cx.top_dim}"
        )


def _profile_bounds(cx: FlagComplex, max_dim: int) -> tuple[int, int | None, int | None]:
    """Top boundary dimension to reduce, euler value, and truncation marker."""
    top = min(max_dim + 1, cx.top_dim)
    euler = (
        sum(c if d % 2 == 0 else -c for d, c in enumerate(cx.counts))
        if cx.complete
        else None
    )
    truncated_at = None if (cx.complete and max_dim >= cx.top_dim) else max_dim
    return top, euler, truncated_at


def betti_gf2(
    cx: FlagComplex, max_betti_dim: int, deadline: float | None = None
) -> BettiProfile:
    """GF(2) Betti numbers of a flag complex through dimension max_betti_dim.

    Requires the complex to be enumerated through max_betti_dim + 1 (or to be
    complete), because betti[d] subtracts the rank of the boundary one
    dimension up.  Boundary matrices are reduced from the top dimension down
    so each reduction can clear the columns named by the pivots above it.
    """
    if max_betti_dim < 0:
        raise ValueError(f"max_betti_dim must be nonnegative, got {max_betti_dim}")
    _require_depth(cx, max_betti_dim + 1, "betti_gf2")
    top, euler, truncated_at = _profile_bounds(cx, max_betti_dim)

    ranks = [0] * (max_betti_dim + 2)
    skip: frozenset[int] = frozenset()
    for d in range(top, 0, -1):
        ranks[d], pivot_rows = gf2_rank(boundary_matrix(cx, d).columns, skip, deadline)
        skip = pivot_rows

    betti = tuple(
        cx.count_at(d) - ranks[d] - ranks[d + 1] for d in range(max_betti_dim + 1)
    )
    return BettiProfile(
        coefficients="gf2",
        betti=betti,
        torsion=tuple(() for _ in betti),
        euler=euler,
        truncated_at=truncated_at,
    )


def signed_boundary_columns(cx: FlagComplex, d: int) -> list[dict[int, int]]:
    """Integer boundary columns for dimension d with alternating-sign entries.

    The boundary of an ascending simplex drops one vertex at a time, the face
    dropping position i weighted (-1)^i.  Row indices follow the lexicographic
    order of the (d - 1)-simplices, matching the GF(2) matrices.
    """
    if not 1 <= d <= cx.top_dim:
        raise ValueError(f"dimension {d} outside enumerated range 1..{cx.top_dim}")
    face_index = {s: i for i, s in enumerate(cx.simplices[d - 1])}
    columns = []
    for sigma in cx.simplices[d]:
        col = {}
        for i in range(len(sigma)):
            col[face_index[sigma[:i] + sigma[i + 1 :]]] = 1 if i % 2 == 0 else -1
        columns.append(col)
    return columns


def smith_invariants(
    n_rows: int,
    columns: Sequence[dict[int, int]],
    deadline: float | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Rank and nontrivial invariant factors of a sparse integer matrix.

    Phase one repeatedly eliminates entries of absolute value 1, choosing
    among them the pivot with the smallest fill estimate; every such step is
    unimodular and contributes an invariant factor of 1.  Whatever survives
    has no unit entries and is handed to a dense textbook Smith normal form.

    Returns:
        (rank, factors) where factors are the invariant factors greater
        than 1 in divisibility order.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        live = {r: v for r, v in col.items() if v}
        if live:
            cols[j] = set(live)
            for r, v in live.items():
                rows.setdefault(r, {})[j] = v
    for r in rows:
        if not 0 <= r < n_rows:
            raise ValueError(f"row index {r} out of range 0..{n_rows - 1}")

    rank = 0
    pending = deque(sorted(cols))
    queued = set(pending)
    steps = 0
    while pending:
        c0 = pending.popleft()
        queued.discard(c0)
        colset = cols.get(c0)
        if not colset:
            continue
        steps += 1
        if deadline is not None and steps % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetError("time budget exceeded during integer elimination")
        best = None
        for r in colset:
            v = rows[r][c0]
            if v == 1 or v == -1:
                key = ((len(rows[r]) - 1) * (len(colset) - 1), r)
                if best is None or key < best[0]:
                    best = (key, r, v)
        if best is None:
            continue
        _, r0, v0 = best
        rank += 1
        col_entries = [(r, rows[r][c0]) for r in cols[c0] if r != r0]
        row_entries = [(c, rows[r0][c]) for c in rows[r0] if c != c0]
        for c, a in row_entries:
            f = a * v0  # v0 is +/-1, so this is exact division a / v0
            target = cols[c]
            for r, b in col_entries:
                rowmap = rows[r]
                nv = rowmap.get(c, 0) - f * b
                if nv:
                    rowmap[c] = nv
                    target.add(r)
                else:
                    if c in rowmap:
                        del rowmap[c]
                    target.discard(r)
            target.discard(r0)
            if target and c not in queued:
                pending.append(c)
                queued.add(c)
        for r, _ in col_entries:
            rows[r].pop(c0, None)
        del rows[r0]
        del cols[c0]

    # Dense finish on whatever the unit pivots could not clear.
    live_rows = sorted(r for r, entries in rows.items() if entries)
    live_cols = sorted(c for c, entries in cols.items() if entries)
    factors: list[int] = []
    if live_rows:
        col_pos = {c: j for j, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][col_pos[c]] = v
        diagonal = _dense_snf_diagonal(dense, deadline)
        rank += len(diagonal)
        factors = _divisibility_chain(diagonal)
    return rank, tuple(f for f in factors if f > 1)


def _dense_snf_diagonal(m: list[list[int]], deadline: float | None = None) -> list[int]:
    """Diagonalize a small dense integer matrix in place; return |diagonal| entries."""
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    out: list[int] = []
    t = 0
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetError("time budget exceeded during dense Smith normal form")
        pivot = None
        for i in range(t, n_rows):
            row = m[i]
            for j in range(t, n_cols):
                v = row[j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
        if m[t][t] < 0:
            m[t] = [-v for v in m[t]]

        p = m[t][t]
        dirty = False
        for i in range(t + 1, n_rows):
            if m[i][t]:
                q = m[i][t] // p
                if q:
                    row_i, row_t = m[i], m[t]
                    for j in range(t, n_cols):
                        row_i[j] -= q * row_t[j]
                if m[i][t]:
                    dirty = True
        row_t = m[t]
        for j in range(t + 1, n_cols):
            if row_t[j]:
                q = row_t[j] // p
                if q:
                    for row in m[t:]:
                        row[j] -= q * row[t]
                if row_t[j]:
                    dirty = True
        if dirty:
            continue

        # Pivot row and column are clear; fold in any entry the pivot misses.
        offender = None
        for i in range(t + 1, n_rows):
            row = m[i]
            for j in range(t + 1, n_cols):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_t, row_o = m[t], m[offender]
            for j in range(t, n_cols):
                row_t[j] += row_o[j]
            continue
        out.append(p)
        t += 1
        if t == n_rows or t == n_cols:
            break
    return out


def _divisibility_chain(diagonal: list[int]) -> list[int]:
    """Normalize positive diagonal entries so each divides the next."""
    chain = [abs(d) for d in diagonal if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                if chain[j] % chain[i]:
                    g = gcd(chain[i], chain[j])
                    chain[i], chain[j] = g, chain[i] * chain[j] // g
                    changed = True
    return sorted(chain)


def homology_integer(
    cx: FlagComplex,
    max_dim: int,
    column_budget: int | None = DEFAULT_SNF_COLUMN_BUDGET,
    deadline: float | None = None,
) -> BettiProfile:
    """Integer homology of a flag complex through dimension max_dim.

    betti[d] is the free rank of H_d and torsion[d] its invariant factors
    greater than 1, read from the Smith normal form of the boundary one
    dimension up.  Needs enumeration through max_dim + 1 like the GF(2) path.

    Args:
        cx: the enumerated complex.
        max_dim: top homology dimension to report.
        column_budget: per-matrix cap on boundary columns fed to the Smith
            normal form; exceeding it raises BudgetError.  None disables.
        deadline: optional time.monotonic() cutoff.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    _require_depth(cx, max_dim + 1, "homology_integer")
    top, euler, truncated_at = _profile_bounds(cx, max_dim)

    ranks = [0] * (max_dim + 2)
    torsion: list[tuple[int, ...]] = [() for _ in range(max_dim + 1)]
    for d in range(1, top + 1):
        cols = signed_boundary_columns(cx, d)
        if column_budget is not None and len(cols) > column_budget:
            raise BudgetError(
                f"boundary matrix at dimension {d} has {len(cols)} columns, "
                f"over the Smith normal form budget of {column_budget}"
            )
        ranks[d], factors = smith_invariants(cx.counts[d - 1], cols, deadline)
        if d - 1 <= max_dim:
            torsion[d - 1] = factors

    betti = tuple(cx.count_at(d) - ranks[d] - ranks[d + 1] for d in range(max_dim + 1))
    return BettiProfile(
        coefficients="integer",
        betti=betti,
        torsion=tuple(torsion),
        euler=euler,
        truncated_at=truncated_at,
    )


def expected_cycle_profile(n: int, k: int) -> BettiProfile:
    """Closed-form Betti profile of the scale-k Vietoris-Rips complex of an n-cycle.

    The homotopy type is governed by the position of k/n among the rational
    breakpoints l/(2l+1): at the breakpoint the complex is a wedge of
    n - 2k - 1 spheres of dimension 2l, strictly between breakpoints it is a
    single sphere of dimension 2l + 1, and for 2k >= n it is a full simplex.
    All case tests are exact integer comparisons.
    """
    if n < 3:
        raise ValueError(f"cycle length must be at least 3, got {n}")
    if k < 0:
        raise ValueError(f"scale must be nonnegative, got {k}")
    if 2 * k >= n:
        return BettiProfile("gf2", (1,), ((),), 1, None)

    level = k // (n - 2 * k)
    betti: list[int]
    if k * (2 * level + 1) == level * n:
        wedge = n - 2 * k - 1
        betti = [1] + [0] * (2 * level)
        betti[2 * level] += wedge
    else:
        betti = [1] + [0] * (2 * level + 1)
        betti[2 * level + 1] = 1
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    euler = sum(b if d % 2 == 0 else -b for d, b in enumerate(betti))
    return BettiProfile(
        coefficients="gf2",
        betti=tuple(betti),
        torsion=tuple(() for _ in betti),
        euler=euler,
        truncated_at=None,
    )

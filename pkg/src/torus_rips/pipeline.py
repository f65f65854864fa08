"""End-to-end runners shared by the command line and the verification suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .certificates import (
    AntipodeReport,
    ConnectivityCertificate,
    Fingerprint,
    antipode_check,
    connectivity_bound,
    expected_torus_profile,
    fingerprint,
)
from .complexes import (
    DEFAULT_SIMPLEX_BUDGET,
    FlagComplex,
    Graph,
    enumerate_simplices,
    vr_graph,
)
from .errors import BudgetError
from .homology import (
    DEFAULT_SNF_COLUMN_BUDGET,
    BettiProfile,
    betti_gf2,
    homology_integer,
)
from .spaces import FiniteMetricSpace, Window, cycle_space, torus_space, window_space


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs beyond the space itself; mirrored into output."""

    coefficients: str = "gf2"
    max_dim: Optional[int] = None  # None means enumerate the whole complex
    simplex_budget: Optional[int] = DEFAULT_SIMPLEX_BUDGET
    snf_column_budget: Optional[int] = DEFAULT_SNF_COLUMN_BUDGET
    time_budget_secs: Optional[float] = None
    threads: int = 1

    def deadline(self) -> Optional[float]:
        if self.time_budget_secs is None:
            return None
        return time.monotonic() + self.time_budget_secs


def build_space(kind: str, n: Optional[int] = None, window: Optional[Window] = None) -> FiniteMetricSpace:
    if kind == "cycle":
        if n is None:
            raise ValueError("cycle space needs n")
        return cycle_space(n)
    if kind == "torus":
        if n is None:
            raise ValueError("torus space needs n")
        return torus_space(n)
    if kind == "window":
        if window is None:
            raise ValueError("window space needs window bounds")
        return window_space(window)
    raise ValueError(f"unknown space kind {kind!r}")


def _full_simplex_profile(coefficients: str, max_dim: int) -> BettiProfile:
    """Profile of a complete-graph complex: a single simplex, so contractible."""
    betti = (1,) + (0,) * max_dim
    return BettiProfile(
        coefficients=coefficients,
        betti=betti,
        torsion=tuple(() for _ in betti),
        euler=1,
        truncated_at=None,
    )


def compute_profile(
    space: FiniteMetricSpace,
    k: int,
    config: RunConfig,
    graph: Optional[Graph] = None,
    deadline: Optional[float] = None,
) -> tuple[BettiProfile, Optional[FlagComplex]]:
    """Build the scale-k complex of a space and compute its Betti profile.

    A complete scale graph short-circuits to the one-simplex profile without
    enumeration; otherwise the complex is enumerated one dimension above the
    requested max_dim (or to completion when max_dim is None) and handed to
    the requested coefficient pipeline.
    """
    if graph is None:
        graph = vr_graph(space, k)
    if deadline is None:
        deadline = config.deadline()
    max_dim = config.max_dim
    if graph.is_complete():
        return _full_simplex_profile(config.coefficients, max_dim or 0), None

    cap = (space.point_count - 1) if max_dim is None else max_dim + 1
    cx = enumerate_simplices(graph, cap, budget=config.simplex_budget, deadline=deadline)
    report_dim = cx.top_dim if max_dim is None else max_dim
    if config.coefficients == "integer":
        profile = homology_integer(
            cx, report_dim, column_budget=config.snf_column_budget, deadline=deadline
        )
    elif config.coefficients == "gf2":
        profile = betti_gf2(cx, report_dim, deadline=deadline)
    else:
        raise ValueError(f"unknown coefficients {config.coefficients!r}")
    return profile, cx


def default_certify_depth(n: int, k: int) -> Optional[int]:
    """Enumeration depth implied by the expected regime profile, if any."""
    expected = expected_torus_profile(n, k)
    if expected is None:
        return None
    return len(expected[1]) - 1


def certify_torus(
    n: int,
    k: int,
    config: RunConfig,
) -> tuple[Fingerprint, Optional[BettiProfile], AntipodeReport, ConnectivityCertificate]:
    """Run the whole certificate pipeline for one (n, k) torus complex.

    The antipodal test and the counting connectivity certificate are always
    computed (both are cheap).  The Betti profile is skipped when the
    antipodal certificate already pins the homotopy type or when the scale
    graph is complete; otherwise its depth comes from the config, falling
    back to the depth of the expected regime profile.
    """
    space = torus_space(n)
    if not 0 <= k:
        raise ValueError(f"scale must be nonnegative, got {k}")
    deadline = config.deadline()
    graph = vr_graph(space, k)
    antipode = antipode_check(graph)
    conn = connectivity_bound(space, k, max_k=1, method="counting")

    profile: Optional[BettiProfile] = None
    if antipode.is_antipode:
        pass  # combinatorial certificate; no homology needed
    elif graph.is_complete():
        profile = _full_simplex_profile(config.coefficients, 0)
    else:
        max_dim = config.max_dim
        if max_dim is None and config.coefficients != "integer":
            max_dim = default_certify_depth(n, k)
            if max_dim is None:
                raise ValueError(
                    f"no expected regime for torus n={n}, k={k}; pass an explicit max_dim"
                )
            config = RunConfig(
                coefficients=config.coefficients,
                max_dim=max_dim,
                simplex_budget=config.simplex_budget,
                snf_column_budget=config.snf_column_budget,
                time_budget_secs=config.time_budget_secs,
                threads=config.threads,
            )
        profile, _ = compute_profile(space, k, config, graph=graph, deadline=deadline)
    fp = fingerprint(profile, antipode, conn, n, k)
    return fp, profile, antipode, conn


@dataclass(frozen=True)
class GoldenRow:
    """One expected-homology table entry.

    ``expected`` maps dimension to Betti number; within 0..max_dim every
    unlisted dimension is asserted 0 (dimension 0 defaults to 1).  Rows with
    ``skip`` set are outside the desk-scale budget and are reported as
    skipped, never run.
    """

    space: str
    n: int
    k: int
    coefficients: str
    max_dim: int
    expected: dict[int, int]
    source: str
    skip: bool = False
    skip_reason: str = ""

    def expected_betti(self) -> tuple[int, ...]:
        return tuple(
            self.expected.get(d, 1 if d == 0 else 0) for d in range(self.max_dim + 1)
        )


def load_golden_table(path: Optional[str] = None) -> list[GoldenRow]:
    """Load the golden homology table from the packaged data file or a path."""
    if path is None:
        text = resources.files("torus_rips.data").joinpath("golden_table.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    raw = json.loads(text)
    rows = []
    for entry in raw["rows"]:
        rows.append(
            GoldenRow(
                space=entry["space"],
                n=entry["n"],
                k=entry["k"],
                coefficients=entry.get("coefficients", "gf2"),
                max_dim=entry["max_dim"],
                expected={int(d): b for d, b in entry["expected"].items()},
                source=entry["source"],
                skip=entry.get("skip", False),
                skip_reason=entry.get("skip_reason", ""),
            )
        )
    return rows


def run_golden_row(row: GoldenRow, config: RunConfig) -> dict:
    """Run one golden row and report PASS / FAIL / SKIPPED with details."""
    base = {
        "space": row.space,
        "n": row.n,
        "k": row.k,
        "coefficients": row.coefficients,
        "max_dim": row.max_dim,
        "expected": list(row.expected_betti()),
        "source": row.source,
    }
    if row.skip:
        base.update(status="SKIPPED", reason=row.skip_reason or "over budget")
        return base
    start = time.monotonic()
    space = build_space(row.space, n=row.n)
    row_config = RunConfig(
        coefficients=row.coefficients,
        max_dim=row.max_dim,
        simplex_budget=config.simplex_budget,
        snf_column_budget=config.snf_column_budget,
        time_budget_secs=config.time_budget_secs,
        threads=config.threads,
    )
    try:
        profile, _ = compute_profile(space, row.k, row_config)
    except BudgetError as exc:
        base.update(status="SKIPPED", reason=f"budget: {exc}")
        return base
    elapsed_ms = int((time.monotonic() - start) * 1000)
    computed = tuple(profile.betti_at(d) for d in range(row.max_dim + 1))
    ok = computed == row.expected_betti()
    if row.coefficients == "integer" and any(profile.torsion):
        ok = False
        base["torsion"] = [list(t) for t in profile.torsion]
    base.update(
        status="PASS" if ok else "FAIL",
        computed=list(computed),
        wall_time_ms=elapsed_ms,
    )
    return base

"""Random generating-multiset experiments against the entropy tail bounds.

Each batch samples connection multisets S, builds the corresponding normalized
operator (Cayley, coset, or bi-coset Gram), records the second-largest
absolute eigenvalue per trial, and compares the empirical tail frequency with
the evaluated bound.  Trial t of a batch draws from ``seeded_rng(seed, t)``,
so results are independent of execution order and bit-reproducible.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .characters import (
    BoundInputs,
    CharacterTable,
    bound_eval,
    character_table,
    dim_sum_D,
    dim_sums_both,
)
from .graphs import bicayley_graph, bicoset_graph, coset_graph
from .permgroup import (
    FiniteGroup,
    Permutation,
    compose,
    inverse,
    right_cosets,
    seeded_rng,
)
from .spectral import sym_eigenvalues

ENUMERATION_CAP = 10**4


class MonteCarloError(ValueError):
    """A trial-batch precondition failed."""


@dataclass(frozen=True)
class TrialBatch:
    """One experiment: per-trial second eigenvalues vs an evaluated tail bound.

    ``bounds`` carries every dimension-sum variant evaluated for the batch and
    ``bound`` is their maximum (the weakest claim; an empirical tail above it
    falsifies all variants at once).  ``violating_trials`` lists the trial
    indices whose value exceeded the threshold, so any falsification comes
    with its reproducing seeds ``(seed, trial)``.
    """

    variant: str
    group: str
    subgroups: tuple[str, ...]
    k: int
    eps: float
    trials: int
    seed: int
    threshold: float
    mu_values: tuple[float, ...]
    empirical_tail: float
    bounds: tuple[tuple[str, float], ...]
    bound: float
    vacuous: bool
    violating_trials: tuple[int, ...]
    flags: tuple[str, ...]
    top_values: tuple[float, ...] = ()

    def falsified(self) -> bool:
        return (not self.vacuous) and self.empirical_tail > self.bound


def product_multisets(
    S: tuple[Permutation, ...]
) -> tuple[tuple[Permutation, ...], tuple[Permutation, ...]]:
    """(B, B*) with B = {s_i s_j^-1 over ordered pairs} and B* = B minus the
    k diagonal identity copies.  Off-diagonal identity collisions stay in B*."""
    if not S:
        raise MonteCarloError("S must be nonempty")
    inv = [inverse(s) for s in S]
    star = tuple(
        compose(S[i], inv[j]) for i in range(len(S)) for j in range(len(S)) if i != j
    )
    ident = compose(S[0], inv[0])
    full = tuple(
        compose(S[i], inv[j]) if i != j else ident
        for i in range(len(S))
        for j in range(len(S))
    )
    return full, star


def _left_mul_rows(G: FiniteGroup):
    cache: dict[int, np.ndarray] = {}

    def row(s_idx: int) -> np.ndarray:
        got = cache.get(s_idx)
        if got is None:
            s = G.elements[s_idx]
            got = np.array([G.index_of(compose(s, g)) for g in G.elements])
            cache[s_idx] = got
        return got

    return row


def cayley_operator(G: FiniteGroup, S: tuple[Permutation, ...]) -> np.ndarray:
    """Normalized multigraph adjacency (1/2|S|) * sum_s (R(s) + R(s)^T)."""
    if not S:
        raise MonteCarloError("S must be nonempty")
    n = len(G)
    rows = _left_mul_rows(G)
    A = np.zeros((n, n))
    ar = np.arange(n)
    for s in S:
        A[rows(G.index_of(s)), ar] += 1.0
    return (A + A.T) / (2.0 * len(S))


def _normalized_coset_matrix(G, H, S) -> tuple[np.ndarray, bool]:
    """0/1 coset adjacency (loops on the diagonal) divided by its row sum.

    Returns (matrix, regular); a non-regular instance is divided by the max
    row sum instead.
    """
    g = coset_graph(G, H, S)
    adj = g.adj.astype(float)
    sums = adj.sum(axis=1)
    regular = bool(np.all(sums == sums[0]))
    return adj / sums.max(), regular


def _mu_tail(mu_values, threshold):
    violating = tuple(i for i, mu in enumerate(mu_values) if mu > threshold)
    return violating, len(violating) / len(mu_values)


def _sample_indices(order: int, k: int, seed: int, trial: int) -> list[int]:
    rng = seeded_rng(seed, trial)
    return [int(i) for i in rng.integers(0, order, size=k)]


def run_cayley_trials(
    G: FiniteGroup,
    k: int,
    eps: float,
    trials: int,
    seed: int,
    table: CharacterTable | None = None,
) -> TrialBatch:
    """Random Cayley multigraphs: tail of mu* past eps vs the dimension-sum bound."""
    if k < 1 or trials < 1:
        raise MonteCarloError(f"need k >= 1 and trials >= 1, got k={k}, trials={trials}")
    table = character_table(G) if table is None else table
    D = dim_sum_D(G, table)
    tb = bound_eval(BoundInputs(D_value=D, k=k, eps=eps, variant="thm14"))
    mu_values = []
    for t in range(trials):
        picks = _sample_indices(len(G), k, seed, t)
        S = tuple(G.elements[i] for i in picks)
        mu_values.append(sym_eigenvalues(cayley_operator(G, S)).mu_star)
    violating, tail = _mu_tail(mu_values, tb.threshold)
    return TrialBatch(
        variant="thm14",
        group=G.label(),
        subgroups=(),
        k=k,
        eps=eps,
        trials=trials,
        seed=seed,
        threshold=tb.threshold,
        mu_values=tuple(mu_values),
        empirical_tail=tail,
        bounds=(("D", tb.bound),),
        bound=tb.bound,
        vacuous=tb.vacuous,
        violating_trials=violating,
        flags=(),
    )


def run_coset_trials(
    G: FiniteGroup,
    H: FiniteGroup,
    k: int,
    eps: float,
    trials: int,
    seed: int,
    table: CharacterTable | None = None,
) -> TrialBatch:
    """Random coset graphs on [G:H], normalized by their (asserted) regular degree."""
    if k < 1 or trials < 1:
        raise MonteCarloError(f"need k >= 1 and trials >= 1, got k={k}, trials={trials}")
    if len(right_cosets(G, H)) < 2:
        raise MonteCarloError("coset space needs at least 2 cosets for mu*")
    table = character_table(G) if table is None else table
    sums = dim_sums_both(G, H, table)
    tb_paper = bound_eval(BoundInputs(D_value=sums["paper"], k=k, eps=eps, variant="thm15"))
    tb_support = bound_eval(
        BoundInputs(D_value=sums["support"], k=k, eps=eps, variant="thm15")
    )
    mu_values = []
    flags = []
    for t in range(trials):
        picks = _sample_indices(len(G), k, seed, t)
        S = tuple(G.elements[i] for i in picks)
        mat, regular = _normalized_coset_matrix(G, H, S)
        if not regular:
            flags.append(f"trial {t}: non-regular coset graph, normalized by max degree")
        mu_values.append(sym_eigenvalues(mat).mu_star)
    violating, tail = _mu_tail(mu_values, tb_paper.threshold)
    bound = max(tb_paper.bound, tb_support.bound)
    return TrialBatch(
        variant="thm15",
        group=G.label(),
        subgroups=(H.label(),),
        k=k,
        eps=eps,
        trials=trials,
        seed=seed,
        threshold=tb_paper.threshold,
        mu_values=tuple(mu_values),
        empirical_tail=tail,
        bounds=(("paper", tb_paper.bound), ("support", tb_support.bound)),
        bound=bound,
        vacuous=bound >= 1.0,
        violating_trials=violating,
        flags=tuple(flags),
    )


def run_bicoset_trials(
    G: FiniteGroup,
    L: FiniteGroup,
    N: FiniteGroup,
    k: int,
    eps: float,
    trials: int,
    seed: int,
    table: CharacterTable | None = None,
) -> TrialBatch:
    """Random bi-coset graphs: mu* of the scaled input-side Gram A A^T / (2k^2).

    The event threshold is eps + (1-eps)/(2k); the realized top eigenvalue is
    recorded per trial since the scaling caps it at 1/2 in the bi-Cayley case.
    """
    if k < 2:
        raise MonteCarloError(f"bi-coset trials need k >= 2, got {k}")
    if trials < 1:
        raise MonteCarloError("trials must be >= 1")
    if len(right_cosets(G, L)) < 2:
        raise MonteCarloError("input coset space is 1-dimensional; mu* undefined")
    table = character_table(G) if table is None else table
    sums = dim_sums_both(G, L, table)
    tb_paper = bound_eval(BoundInputs(D_value=sums["paper"], k=k, eps=eps, variant="thm18"))
    tb_support = bound_eval(
        BoundInputs(D_value=sums["support"], k=k, eps=eps, variant="thm18")
    )
    mu_values = []
    top_values = []
    for t in range(trials):
        picks = _sample_indices(len(G), k, seed, t)
        S = tuple(G.elements[i] for i in picks)
        A = bicoset_graph(G, L, N, S).inc.astype(float)
        M = A @ A.T / (2.0 * k * k)
        report = sym_eigenvalues(M)
        mu_values.append(report.mu_star)
        top_values.append(max(abs(report.eigenvalues[0]), abs(report.eigenvalues[-1])))
    violating, tail = _mu_tail(mu_values, tb_paper.threshold)
    bound = max(tb_paper.bound, tb_support.bound)
    return TrialBatch(
        variant="thm18",
        group=G.label(),
        subgroups=(L.label(), N.label()),
        k=k,
        eps=eps,
        trials=trials,
        seed=seed,
        threshold=tb_paper.threshold,
        mu_values=tuple(mu_values),
        empirical_tail=tail,
        bounds=(("paper", tb_paper.bound), ("support", tb_support.bound)),
        bound=bound,
        vacuous=bound >= 1.0,
        violating_trials=violating,
        flags=(),
        top_values=tuple(top_values),
    )


# -- exact small-case enumeration ---------------------------------------------

def enumerate_cayley_tail(
    G: FiniteGroup, k: int, eps: float, cap: int = ENUMERATION_CAP
) -> tuple[float, int]:
    """Exact P(mu* > eps) over all |G|^k ordered draws; feasible when <= cap."""
    total = len(G) ** k
    if total > cap:
        raise MonteCarloError(f"|G|^k = {total} exceeds enumeration cap {cap}")
    exceed = 0
    for combo in itertools.product(G.elements, repeat=k):
        mu = sym_eigenvalues(cayley_operator(G, combo)).mu_star
        if mu > eps:
            exceed += 1
    return exceed / total, total


def enumerate_coset_tail(
    G: FiniteGroup, H: FiniteGroup, k: int, eps: float, cap: int = ENUMERATION_CAP
) -> tuple[float, int]:
    """Exact coset-graph tail over all |G|^k ordered draws."""
    total = len(G) ** k
    if total > cap:
        raise MonteCarloError(f"|G|^k = {total} exceeds enumeration cap {cap}")
    exceed = 0
    for combo in itertools.product(G.elements, repeat=k):
        mat, _ = _normalized_coset_matrix(G, H, combo)
        if sym_eigenvalues(mat).mu_star > eps:
            exceed += 1
    return exceed / total, total


def shifted_product_spectrum_matches(
    G: FiniteGroup, S: tuple[Permutation, ...], tol: float = 1e-8
) -> bool | None:
    """Cross-check of the bi-Cayley Gram spectrum against the product multiset.

    With trivial subgroups and distinct elements in S, the spectrum of
    A A^T / (2k^2) must equal the normalized adjacency spectrum of the Cayley
    graph on B* = SS^{-1} minus identities, mapped through
    nu -> ((k^2-k) nu + k) / (2k^2).  Returns None when the diagonal condition
    fails (repeated draws), True/False otherwise.
    """
    k = len(S)
    if k < 2 or len(set(S)) != k:
        return None
    A = bicayley_graph(G, S).inc.astype(float)
    M = A @ A.T / (2.0 * k * k)
    if not np.all(np.diag(A @ A.T) == k):
        return None
    _, b_star = product_multisets(S)
    op = cayley_operator(G, b_star)
    nu = np.array(sym_eigenvalues(op).eigenvalues)
    mapped = np.sort(((k * k - k) * nu + k) / (2.0 * k * k))
    direct = np.sort(np.array(sym_eigenvalues(M).eigenvalues))
    if not np.allclose(mapped, direct, atol=tol):
        return False
    by_abs = np.sort(np.abs(mapped))[::-1]
    return bool(abs(by_abs[1] - sym_eigenvalues(M).mu_star) <= tol)


# -- reporting -----------------------------------------------------------------

def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def aggregate_rows(
    batches: list[TrialBatch], wall_times: list[float] | None = None
) -> list[dict]:
    """One summary row per batch, deterministically ordered by (group, k, eps)."""
    rows = []
    for i, b in enumerate(batches):
        bounds = dict(b.bounds)
        row = {
            "variant": b.variant,
            "group": b.group,
            "subgroups": ";".join(b.subgroups),
            "k": b.k,
            "eps": _sig12(b.eps),
            "threshold": _sig12(b.threshold),
            "empirical_tail": _sig12(b.empirical_tail),
            "bound_paper": _sig12(bounds.get("paper", bounds.get("D", math.nan))),
            "bound_support": _sig12(bounds.get("support", bounds.get("D", math.nan))),
            "vacuous": b.vacuous,
            "falsified": b.falsified(),
            "seed": b.seed,
            "trials": b.trials,
        }
        if wall_times is not None:
            row["wall_time_s"] = _sig12(wall_times[i])
        rows.append(row)
    rows.sort(key=lambda r: (r["group"], r["k"], r["eps"], r["variant"]))
    return rows


CSV_COLUMNS = (
    "variant",
    "group",
    "subgroups",
    "k",
    "eps",
    "threshold",
    "empirical_tail",
    "bound_paper",
    "bound_support",
    "vacuous",
    "falsified",
    "seed",
    "trials",
)


def render_csv(rows: list[dict]) -> str:
    columns = list(CSV_COLUMNS)
    if any("wall_time_s" in r for r in rows):
        columns.append("wall_time_s")
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(_csv_cell(r.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render_json(rows: list[dict]) -> str:
    return json.dumps(rows, sort_keys=True, indent=2) + "\n"

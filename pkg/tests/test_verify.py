import numpy as np
import pytest

import concentrators as C
from concentrators.designs import design_bipartite
from concentrators.spectral import sym_eigenvalues, tanner_bound
from concentrators.verify import (
    VerifyError,
    _scan_numpy,
    _scan_python,
    bsc_check,
    double_cover_harness,
    expander_check,
    magnifier_constant,
)


def cycle_graph(n):
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return C.Graph(a)


def path_graph(n):
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1
    return C.Graph(a)


def k33():
    return C.BipartiteGraph(np.ones((3, 3), dtype=np.int64))


def test_bsc_k33():
    rep = bsc_check(k33(), alpha=1.0, c=1.0)
    assert rep.verdict
    assert rep.worst_ratio >= 1.0


def test_bsc_matching_fails_c2():
    rep = bsc_check(C.BipartiteGraph(np.eye(3, dtype=np.int64)), alpha=1.0, c=2.0)
    assert not rep.verdict
    assert rep.worst_ratio == 1.0
    assert len(rep.worst_set) == 1


def test_bsc_d9_blocks_meets_tanner(mathieu_chain):
    d9 = mathieu_chain[3]
    X = design_bipartite(d9, blocks_as_inputs=True)
    c = tanner_bound(12, 9, 3, 4, 3.0, 0.75)
    rep = bsc_check(X, alpha=0.75, c=c)
    assert rep.verdict
    assert rep.worst_ratio >= c


def test_bsc_alpha_validation():
    with pytest.raises(VerifyError):
        bsc_check(k33(), alpha=0.0, c=1.0)
    with pytest.raises(VerifyError):
        bsc_check(k33(), alpha=0.1, c=1.0)  # no eligible subset size


def test_bsc_exhaustive_cap():
    X = C.BipartiteGraph(np.ones((25, 3), dtype=np.int64))
    with pytest.raises(VerifyError):
        bsc_check(X, alpha=1.0, c=0.1)


def test_bsc_sampled_refutes(mathieu_chain):
    X = C.BipartiteGraph(np.eye(3, dtype=np.int64))
    rep = bsc_check(X, alpha=1.0, c=2.0, mode="sampled", budget=64, seed=5)
    assert rep.mode == "sampled"
    assert not rep.verdict


def test_bsc_sampled_needs_seed():
    with pytest.raises(VerifyError):
        bsc_check(k33(), alpha=1.0, c=1.0, mode="sampled", seed=None)


def test_sampled_never_below_exhaustive():
    rng = np.random.default_rng(33)
    for _ in range(5):
        inc = (rng.random((7, 7)) < 0.4).astype(np.int64)
        inc[rng.integers(0, 7), rng.integers(0, 7)] = 1
        X = C.BipartiteGraph(inc)
        exact = bsc_check(X, alpha=1.0, c=0.0).worst_ratio
        sampled = bsc_check(X, alpha=1.0, c=0.0, mode="sampled", budget=30, seed=9)
        assert sampled.worst_ratio >= exact - 1e-12


def test_worst_ratio_invariant_under_relabeling():
    rng = np.random.default_rng(12)
    inc = (rng.random((8, 9)) < 0.35).astype(np.int64)
    inc[:, 0] = 1  # avoid empty rows
    X = C.BipartiteGraph(inc)
    base = bsc_check(X, alpha=1.0, c=0.0).worst_ratio
    rows = rng.permutation(8)
    cols = rng.permutation(9)
    Y = C.BipartiteGraph(inc[np.ix_(rows, cols)])
    assert bsc_check(Y, alpha=1.0, c=0.0).worst_ratio == pytest.approx(base)


def test_magnifier_k3():
    rep = magnifier_constant(C.Graph(np.ones((3, 3), dtype=np.int64) - np.eye(3, dtype=np.int64)))
    assert rep.worst_ratio == 2.0


def test_magnifier_c6():
    rep = magnifier_constant(cycle_graph(6))
    assert rep.worst_ratio == pytest.approx(2 / 3)
    assert rep.worst_set == (0, 1, 2)  # lexicographically least attaining run


def test_magnifier_edgeless():
    rep = magnifier_constant(C.Graph(np.zeros((4, 4), dtype=np.int64)))
    assert rep.worst_ratio == 0.0
    assert not rep.verdict


def test_magnifier_positive_iff_connected():
    graphs = [cycle_graph(5), path_graph(6), cycle_graph(8)]
    for g in graphs:
        assert magnifier_constant(g).worst_ratio > 0
    disconnected = np.zeros((6, 6), dtype=np.int64)
    disconnected[0, 1] = disconnected[1, 0] = 1
    disconnected[2, 3] = disconnected[3, 2] = 1
    disconnected[4, 5] = disconnected[5, 4] = 1
    assert magnifier_constant(C.Graph(disconnected)).worst_ratio == 0.0


def test_expander_k33_half_restricted():
    rep = expander_check(k33(), c=1.0)
    assert rep.verdict


def test_expander_k33_unrestricted_fails():
    rep = expander_check(k33(), c=2.0, restrict_half=False)
    assert not rep.verdict


def test_expander_c0_reduces_to_hall():
    X = C.BipartiteGraph(np.eye(4, dtype=np.int64))
    assert expander_check(X, c=0.0, restrict_half=False).verdict


def test_expander_needs_square_sides():
    with pytest.raises(VerifyError):
        expander_check(C.BipartiteGraph(np.ones((2, 3), dtype=np.int64)), c=0.5)


def test_harness_c3():
    tri = C.Graph(np.ones((3, 3), dtype=np.int64) - np.eye(3, dtype=np.int64))
    rep = double_cover_harness(tri)
    assert rep.magnifier.worst_ratio == 2.0
    assert rep.passed


def test_harness_c6_and_p3():
    assert double_cover_harness(cycle_graph(6)).passed
    report = double_cover_harness(path_graph(3))
    assert report.passed in (True, False)  # falsification harness, no assumed verdict
    assert report.expander.subsets_checked > 0


def test_python_and_numpy_engines_agree():
    rng = np.random.default_rng(2)
    inc = (rng.random((17, 10)) < 0.3).astype(np.int64)
    inc[:, 0] = 1
    masks = []
    for row in inc:
        m = 0
        for j in np.nonzero(row)[0]:
            m |= 1 << int(j)
        masks.append(m)
    metric = lambda size, union, mask: (union.bit_count(), size)
    best_py, checked_py, _ = _scan_python(masks, 17, 8, metric, None, False)
    best_np, checked_np, _ = _scan_numpy(masks, 17, 8, "plain", None, False)
    assert checked_py == checked_np
    assert best_py[0] * best_np[1] == best_np[0] * best_py[1]
    assert best_py[2] == best_np[2]


def test_tanner_property_over_bibd_corpus(mathieu_chain):
    gq = C.gq22_incidence()
    cases = [design_bipartite(mathieu_chain[3], blocks_as_inputs=True)]
    cases += [design_bipartite(d) for d in mathieu_chain[1:]]
    cases.append(gq)
    for X in cases:
        n, m = X.n_in, X.n_out
        k = int(X.in_degrees()[0])
        r = int(X.out_degrees()[0])
        A = X.inc.astype(float)
        lam2 = sym_eigenvalues(A @ A.T).eigenvalues[1]
        top = min(m / n, 1.0)
        alphas = [a / 10 for a in range(1, 11) if a / 10 <= top]
        if top not in alphas:
            alphas.append(top)
        for alpha in alphas:
            if int(alpha * n + 1e-9) < 1:
                continue
            c = tanner_bound(n, m, k, r, lam2, alpha)
            rep = bsc_check(X, alpha=alpha, c=c)
            assert rep.verdict, (n, m, alpha, c, rep.worst_ratio)

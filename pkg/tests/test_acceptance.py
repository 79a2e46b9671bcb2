"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; tolerances are pinned here and nowhere else.
"""

import json

import numpy as np
import pytest

from limcon import (
    DirectedGraph,
    InfeasibleSynthesisError,
    Schedule,
    WeightedNeighborGraph,
    build_update_matrix,
    chi,
    consensus_error,
    cycle_criterion,
    directed_cycle,
    directed_path,
    ear_decomposition,
    identity_weights,
    is_symmetric,
    is_well_configured,
    is_well_configured_via_overlap,
    local_agreement_residual,
    mixed_norm_2_inf,
    run_cycle_projection,
    run_fixed_step,
    run_gradient,
    run_metropolis_tv,
    spectral_report,
    stacked_laplacian,
    symmetric_cycle,
    synthesize_symmetric_weights,
    synthesize_weights,
    validate_ear_decomposition,
)
from limcon.cli import bundled_scenario_path, main
from limcon.linalg import kernel_basis

from conftest import (
    random_subspace,
    random_weakly_connected_wng,
    weight_with_kernel,
)
from oracles import central_difference_gradient


def well_configured_instances():
    """Assorted verified instances used by the spectral/convergence criteria."""
    out = {
        "sym_triangle_n2": synthesize_weights(symmetric_cycle(3), 2, mode="nonzero-kernels"),
        "sym_square_n2": synthesize_weights(symmetric_cycle(4), 2, mode="nonzero-kernels"),
        "sym_square_sym_n4": synthesize_symmetric_weights(symmetric_cycle(4), 4, mode="nonzero-kernels"),
        "cycle3_n3": synthesize_weights(directed_cycle(3), 3, mode="nonzero-kernels"),
        "cycle4_n4": synthesize_weights(directed_cycle(4), 4, mode="nonzero-kernels"),
        "identity_triangle_n3": identity_weights(symmetric_cycle(3), 3),
    }
    for name, w in out.items():
        assert is_well_configured(w), name
    return out


def cycle_wng(kernels):
    m = len(kernels)
    n = kernels[0].shape[0]
    g = directed_cycle(m)
    weights = {(v, v % m + 1): weight_with_kernel(kernels[v - 1]) for v in range(1, m + 1)}
    return WeightedNeighborGraph(g, n, weights)


def measured_rate(traj, floor=1e-12):
    errs = traj.consensus_errors
    valid = np.where(errs > floor)[0]
    t1 = int(valid[-1])
    t0 = max(t1 - 60, 10)
    return (errs[t1] / errs[t0]) ** (1.0 / (t1 - t0))


def second_modulus(mat, n):
    lam = np.sort(np.abs(np.linalg.eigvals(mat)))
    return float(lam[-(n + 1)])


def test_criterion_1_well_configuration_equivalences():
    rng = np.random.default_rng(101)
    checked = 0
    while checked < 200:
        w = random_weakly_connected_wng(rng)
        eq1 = bool(is_well_configured(w))
        eq2 = is_well_configured_via_overlap(w)
        assert eq1 == eq2
        perm = [w.graph.arcs[k] for k in rng.permutation(w.graph.d)]
        assert bool(is_well_configured(w, arc_order=perm)) == eq1
        checked += 1
    print(f"\n[criterion 1] PASS - both formulations agree on {checked} instances, order-invariant")


def test_criterion_2_cycle_iff():
    rng = np.random.default_rng(102)
    checked = 0
    for m in range(2, 6):
        for n in range(2, 5):
            for _ in range(8):
                kernels = [random_subspace(rng, n, int(rng.integers(0, n + 1))) for _ in range(m)]
                assert bool(is_well_configured(cycle_wng(kernels))) == cycle_criterion(kernels)
                checked += 1
            e = np.eye(n)
            coord = [e[:, [k % n]] for k in range(m)]
            assert bool(is_well_configured(cycle_wng(coord))) == (m <= n)
    print(f"\n[criterion 2] PASS - criterion matches verifier on {checked} random cycles;"
          " coordinate kernels accepted iff m <= n")


def test_criterion_3_path_necessity():
    rng = np.random.default_rng(103)
    checked = 0
    for m in range(2, 6):
        for n in (2, 3):
            for _ in range(6):
                dims = [int(rng.integers(0, n)) for _ in range(m - 1)]
                if not any(dims):
                    dims[int(rng.integers(0, m - 1))] = 1
                g = directed_path(m)
                weights = {
                    (v, v + 1): weight_with_kernel(random_subspace(rng, n, dims[v - 1]))
                    for v in range(1, m)
                }
                w = WeightedNeighborGraph(g, n, weights)
                report = is_well_configured(w)
                assert not report.well_configured
                assert local_agreement_residual(w, report.witness) < 1e-9
                assert consensus_error(report.witness) > 1e-3
                checked += 1
    print(f"\n[criterion 3] PASS - {checked} lossy paths rejected, all witnesses valid")


def test_criterion_4_ear_machinery(sc_corpus):
    for name, g in sc_corpus.items():
        dec = ear_decomposition(g)
        validate_ear_decomposition(g, dec)
        assert len(dec) == g.d - g.m + 1, name
    for name, g in sc_corpus.items():
        if is_symmetric(g) and g.d <= 16:
            assert chi(g) == 2, name
    for m in range(2, 7):
        assert chi(directed_cycle(m)) == m
    print(f"\n[criterion 4] PASS - valid decompositions with e-m+1 ears on {len(sc_corpus)} graphs;"
          " chi = 2 on symmetric, chi = m on cycles")


def test_criterion_5_synthesis_soundness(sc_corpus, sym_corpus, tmp_path):
    feasible = infeasible = 0
    for name, g in sc_corpus.items():
        dec = ear_decomposition(g)
        for n in (2, 3, 4):
            if dec.max_length <= n:
                w = synthesize_weights(g, n, dec, mode="nonzero-kernels")
                assert is_well_configured(w), (name, n)
                assert all(w.kernel(a).shape[1] >= 1 for a in g.arcs)
                feasible += 1
            else:
                with pytest.raises(InfeasibleSynthesisError):
                    synthesize_weights(g, n, dec, mode="nonzero-kernels")
                infeasible += 1
    pairs = 0
    for name, g in sym_corpus.items():
        for n in (2, 3, 4):
            w = synthesize_symmetric_weights(g, n)
            assert is_well_configured(w), (name, n)
            for a, b in g.undirected_pairs:
                assert np.array_equal(w.weight((a, b)), w.weight((b, a)))
                pairs += 1
    # the command-line path re-verifies before emitting
    scenario = str(bundled_scenario_path("symmetric_nonzero_kernels"))
    assert main(["synth", "--scenario", scenario, "--out", str(tmp_path)]) == 0
    assert (tmp_path / "weights.json").exists()
    print(f"\n[criterion 5] PASS - {feasible} feasible syntheses verified, {infeasible} infeasible refused,"
          f" {pairs} symmetric pairs byte-equal")


def test_criterion_6_spectral_lemmas():
    rng = np.random.default_rng(106)
    for name, w in well_configured_instances().items():
        n, m = w.n, w.m
        gram = stacked_laplacian(w)
        lam = np.linalg.eigvalsh(gram)
        assert np.sum(np.abs(lam) <= 1e-8) == n, name
        assert np.all(lam[np.abs(lam) > 1e-8] > 0), name
        scale = np.kron(np.diag(rng.uniform(0.2, 2.0, size=m)), np.eye(n))
        lam_w = np.linalg.eigvals(scale @ gram)
        assert np.abs(np.imag(lam_w)).max() < 1e-8, name
        lam_w = np.real(lam_w)
        assert np.sum(np.abs(lam_w) <= 1e-8) == n, name
        assert np.all(lam_w[np.abs(lam_w) > 1e-8] > 0), name
        if is_symmetric(w.graph):
            for algorithm in ("fixed_step", "metropolis_tv"):
                rep = spectral_report(build_update_matrix(algorithm, w), n)
                assert rep.ones == n, (name, algorithm)
                assert rep.outside == 0, (name, algorithm)
            eye = np.eye(m * n)
            damped = eye - build_update_matrix("fixed_step", w)
            assert mixed_norm_2_inf(damped, n) < 2.0, name
    print("\n[criterion 6] PASS - n zeros/ones where required, damped mixed norm < 2")


def test_criterion_7_convergence_runs():
    rng = np.random.default_rng(107)
    budget_cap = {}
    for name, w, runner, algorithm in (
        ("sym_triangle_n2", synthesize_weights(symmetric_cycle(3), 2, mode="nonzero-kernels"), run_fixed_step, "fixed_step"),
        ("sym_square_n2", synthesize_weights(symmetric_cycle(4), 2, mode="nonzero-kernels"), run_fixed_step, "fixed_step"),
        ("cycle3_n3", synthesize_weights(directed_cycle(3), 3, mode="nonzero-kernels"), run_cycle_projection, "cycle_projection"),
        ("cycle4_n4", synthesize_weights(directed_cycle(4), 4, mode="nonzero-kernels"), run_cycle_projection, "cycle_projection"),
    ):
        mat = build_update_matrix(algorithm, w)
        rho2 = second_modulus(mat, w.n)
        gap = 1.0 - rho2
        budget = int(np.ceil(10.0 * np.log(1e9) / gap))
        budget_cap[name] = budget
        traj = runner(w, rng.standard_normal((w.m, w.n)), budget)
        assert traj.converged, name
        assert traj.final_consensus_error < 1e-9, name
        rate = measured_rate(traj)
        assert abs(rate - rho2) <= 0.10 * rho2, (name, rate, rho2)

    tri = synthesize_weights(symmetric_cycle(3), 2, mode="nonzero-kernels")
    grad = run_gradient(tri, np.random.default_rng(5).standard_normal((3, 2)), 2000)
    reduction = grad.consensus_errors[0] / grad.final_consensus_error
    assert reduction >= 1e3, reduction

    square = synthesize_weights(symmetric_cycle(4), 2, mode="nonzero-kernels")
    sub1 = DirectedGraph(4, ((1, 2), (2, 1), (3, 4), (4, 3)))
    sub2 = DirectedGraph(4, ((2, 3), (3, 2), (4, 1), (1, 4)))
    assert set(sub1.arcs) | set(sub2.arcs) == set(square.graph.arcs)
    tv = run_metropolis_tv(square, np.random.default_rng(9).standard_normal((4, 2)), Schedule.periodic([sub1, sub2]), 5000)
    assert tv.converged
    assert tv.final_consensus_error < 1e-6
    print(f"\n[criterion 7] PASS - geometric runs within budgets {budget_cap}, rates within 10%,"
          f" gradient reduction {reduction:.1e}, time-varying run converged")


def test_criterion_8_counterexample_reproduction(tmp_path, capsys):
    g = DirectedGraph(3, ((1, 2), (2, 3), (3, 1), (2, 1)))
    w = WeightedNeighborGraph(
        g,
        2,
        {
            (1, 2): np.array([[1.0, 0.0]]),
            (2, 3): np.array([[1.0, 0.0]]),
            (3, 1): np.array([[0.0, 1.0]]),
            (2, 1): np.array([[0.0, 1.0]]),
        },
    )
    assert is_well_configured(w)
    y = np.array([0.0, 1.0])
    x = np.concatenate([np.zeros(2), y, -y])
    mat = build_update_matrix("general_projection", w)
    assert np.linalg.norm(mat @ x - x) < 1e-12
    assert kernel_basis(mat - np.eye(6)).shape[1] > 2

    out = tmp_path / "ce"
    assert main(["counterexample", "--out", str(out)]) == 0
    capsys.readouterr()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["converged"] is False
    rows = (out / "trajectory.csv").read_text().strip().splitlines()[1:]
    per_round = {}
    for row in rows:
        t, agent, c1, c2 = row.split(",")
        per_round.setdefault(int(t), []).append([float(c1), float(c2)])
    norm_y = np.linalg.norm(y)
    for t, states in per_round.items():
        assert consensus_error(np.asarray(states)) >= 0.5 * norm_y, t
    print(f"\n[criterion 8] PASS - fixed point held for {len(per_round)} recorded rounds,"
          " unit eigenspace exceeds consensus span")


def test_criterion_9_gradient_correctness():
    rng = np.random.default_rng(109)
    instances = [
        synthesize_weights(symmetric_cycle(3), 2, mode="nonzero-kernels"),
        synthesize_weights(symmetric_cycle(4), 3, mode="nonzero-kernels"),
        identity_weights(symmetric_cycle(3), 2),
    ]
    for w in instances:
        from limcon.wellconfig import agreement_map

        amap = agreement_map(w)
        gram = stacked_laplacian(w)

        def objective(flat):
            return float(np.linalg.norm(amap @ flat) ** 2)

        for _ in range(50):
            x = rng.standard_normal(w.m * w.n)
            analytic = 2.0 * gram @ x
            numeric = central_difference_gradient(objective, x)
            denom = max(np.linalg.norm(analytic), 1e-12)
            assert np.linalg.norm(analytic - numeric) / denom < 1e-6
    print(f"\n[criterion 9] PASS - analytic gradient matches central differences at"
          f" {50 * len(instances)} points")

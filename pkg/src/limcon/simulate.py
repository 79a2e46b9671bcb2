"""Synchronous-round engines for the consensus iterations, Metropolis
weights, time-varying schedules, and spectral diagnostics.

Every engine advances the whole network one round at a time: the t+1 state
of each agent depends only on round-t states.  Iterations are applied in a
factored matrix-free form (differences first), so exact-consensus states are
exact fixed points; `build_update_matrix` exposes the equivalent dense
round map for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import (
    DirectedGraph,
    incidence_matrix,
    is_directed_cycle,
    is_symmetric,
    spanning_incidence_matrix,
)
from .linalg import kernel_basis, mixed_norm_2_inf
from .wellconfig import WeightedNeighborGraph, agreement_map, stacked_weights

# A run counts as converged after this many consecutive rounds below tolerance.
CONSENSUS_TOL = 1e-9
CONSENSUS_STREAK = 10

ALGORITHMS = ("gradient", "fixed_step", "metropolis_tv", "cycle_projection", "general_projection")
EIG_COUNT_TOL = 1e-8


def metropolis_weights(g: DirectedGraph) -> dict[tuple[int, int], float]:
    """Per-arc weights 1 / (1 + max(d_i, d_j)) on a symmetric graph.

    Symmetric in the arc direction, and every agent's weights sum to
    strictly less than one.
    """
    if not is_symmetric(g):
        raise ValueError("Metropolis weights are defined for symmetric graphs")
    return {(j, i): 1.0 / (1.0 + max(g.degree(i), g.degree(j))) for j, i in g.arcs}


def spanning_weight_matrix(g: DirectedGraph, sub: DirectedGraph) -> np.ndarray:
    """d x d diagonal of sub's Metropolis weights, indexed by g's arc order;
    arcs of g absent from sub get zero."""
    if not sub.is_spanning_subgraph_of(g):
        raise ValueError("sub must be a spanning subgraph of g")
    if not is_symmetric(sub):
        raise ValueError("spanning weight matrix needs a symmetric subgraph")
    weights = metropolis_weights(sub)
    diag = np.array([weights.get(arc, 0.0) for arc in g.arcs])
    return np.diag(diag)


@dataclass(frozen=True)
class StepsizeSchedule:
    """Stepsize sequence for the gradient iteration."""

    kind: str  # "harmonic" | "constant" | "scripted"
    a: float = 1.0
    b: float = 2.0
    value: float = 0.0
    values: tuple[float, ...] = ()

    @classmethod
    def harmonic(cls, a: float = 1.0, b: float = 2.0) -> "StepsizeSchedule":
        # a/(t+b) with a>0, b>=1 sums to infinity while its squares converge.
        if a <= 0 or b < 1:
            raise ValueError("harmonic stepsize needs a > 0 and b >= 1")
        return cls("harmonic", a=a, b=b)

    @classmethod
    def constant(cls, value: float) -> "StepsizeSchedule":
        if value <= 0:
            raise ValueError("constant stepsize must be positive")
        return cls("constant", value=value)

    @classmethod
    def scripted(cls, values) -> "StepsizeSchedule":
        values = tuple(float(v) for v in values)
        if not values or any(v <= 0 for v in values):
            raise ValueError("scripted stepsizes must be positive")
        return cls("scripted", values=values)

    def alpha(self, t: int) -> float:
        if self.kind == "harmonic":
            return self.a / (t + self.b)
        if self.kind == "constant":
            return self.value
        if t >= len(self.values):
            raise ValueError(f"stepsize script of length {len(self.values)} exhausted at round {t}")
        return self.values[t]


@dataclass(frozen=True)
class Schedule:
    """Which symmetric spanning subgraph is active each round."""

    mode: str  # "fixed" | "periodic" | "scripted"
    subgraphs: tuple[DirectedGraph, ...]
    script: tuple[int, ...] | None = None

    @classmethod
    def fixed(cls, sub: DirectedGraph) -> "Schedule":
        return cls("fixed", (sub,))

    @classmethod
    def periodic(cls, subgraphs) -> "Schedule":
        subgraphs = tuple(subgraphs)
        if not subgraphs:
            raise ValueError("periodic schedule needs at least one subgraph")
        return cls("periodic", subgraphs)

    @classmethod
    def scripted(cls, subgraphs, script) -> "Schedule":
        subgraphs = tuple(subgraphs)
        script = tuple(int(s) for s in script)
        if any(s < 0 or s >= len(subgraphs) for s in script):
            raise ValueError("script indices out of range")
        return cls("scripted", subgraphs, script)

    def index_at(self, t: int) -> int:
        if self.mode == "fixed":
            return 0
        if self.mode == "periodic":
            return t % len(self.subgraphs)
        assert self.script is not None
        if t >= len(self.script):
            raise ValueError(f"schedule script of length {len(self.script)} exhausted at round {t}")
        return self.script[t]

    def graph_at(self, t: int) -> DirectedGraph:
        return self.subgraphs[self.index_at(t)]

    def validate_for(self, base: DirectedGraph) -> None:
        for k, sub in enumerate(self.subgraphs):
            if not sub.is_spanning_subgraph_of(base):
                raise ValueError(f"scheduled graph {k} is not a spanning subgraph of the base graph")
            if not is_symmetric(sub):
                raise ValueError(f"scheduled graph {k} is not symmetric")


@dataclass
class Trajectory:
    """Recorded run: stacked states per round plus per-round metrics."""

    algorithm: str
    states: np.ndarray  # (rounds+1, m, n)
    consensus_errors: np.ndarray
    residuals: np.ndarray
    converged: bool
    steps_run: int

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_consensus_error(self) -> float:
        return float(self.consensus_errors[-1])

    @property
    def final_residual(self) -> float:
        return float(self.residuals[-1])


def consensus_error(x, n: int | None = None) -> float:
    """max_i ||x_i - mean||_2 over the agents."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        if n is None:
            raise ValueError("flat states need the per-agent dimension n")
        x = x.reshape(-1, n)
    return float(np.max(np.linalg.norm(x - x.mean(axis=0), axis=1)))


def local_agreement_residual(w: WeightedNeighborGraph, x) -> float:
    """||C Jbar' x||_2: zero iff every transmitted view of the state agrees."""
    flat = np.asarray(x, dtype=float).reshape(-1)
    return float(np.linalg.norm(agreement_map(w) @ flat))


def _coerce_state(x0, m: int, n: int) -> np.ndarray:
    x = np.asarray(x0, dtype=float)
    if x.shape == (m * n,):
        x = x.reshape(m, n)
    if x.shape != (m, n):
        raise ValueError(f"initial state must have shape ({m}, {n}) or ({m * n},), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("initial state must be finite")
    return x.copy()


def _require_symmetric(g: DirectedGraph, what: str) -> None:
    if not is_symmetric(g):
        raise ValueError(f"{what} is defined for symmetric graphs")


def _damping(g: DirectedGraph, n: int, half: bool) -> np.ndarray:
    scale = np.array([1.0 / ((2.0 if half else 1.0) * (g.degree(i) + 1)) for i in range(1, g.m + 1)])
    return np.repeat(scale, n)


def _block_rows(w: WeightedNeighborGraph) -> np.ndarray:
    return np.array([w.weight(arc).shape[0] for arc in w.graph.arcs], dtype=int)


class _Pieces:
    """Stacked factors shared by the factored round maps."""

    def __init__(self, w: WeightedNeighborGraph, sub: DirectedGraph | None = None):
        g = w.graph
        eye_n = np.eye(w.n)
        inc = incidence_matrix(g) if sub is None else spanning_incidence_matrix(g, sub)
        self.jbar = np.kron(inc, eye_n)
        self.jplus_bar = np.kron(np.clip(inc, 0.0, None), eye_n)
        self.c = stacked_weights(w)


def _gradient_step(w: WeightedNeighborGraph, stepsize: StepsizeSchedule):
    p = _Pieces(w)

    def apply(t, flat):
        pulled = p.c.T @ (p.c @ (p.jbar.T @ flat))
        return flat - stepsize.alpha(t) * (p.jbar @ pulled)

    return apply


def _fixed_step(w: WeightedNeighborGraph):
    wn = w.normalized()
    p = _Pieces(wn)
    damp = _damping(w.graph, w.n, half=True)

    def apply(t, flat):
        pulled = p.c.T @ (p.c @ (p.jbar.T @ flat))
        return flat - damp * (p.jbar @ pulled)

    return apply


def _metropolis_step(w: WeightedNeighborGraph, sub: DirectedGraph):
    wn = w.normalized()
    p = _Pieces(wn, sub)
    weights = spanning_weight_matrix(w.graph, sub).diagonal()
    wrep = np.repeat(weights, _block_rows(wn))

    def apply(t, flat):
        signal = wrep * (p.c @ (p.jbar.T @ flat))
        return flat - 0.5 * (p.jbar @ (p.c.T @ signal))

    return apply


def _projection_step(w: WeightedNeighborGraph):
    wn = w.normalized()
    p = _Pieces(wn)
    damp = _damping(w.graph, w.n, half=False)

    def apply(t, flat):
        projected = p.c.T @ (p.c @ (p.jbar.T @ flat))
        return flat - damp * (p.jplus_bar @ projected)

    return apply


def _run(w: WeightedNeighborGraph, x0, steps: int, apply_round, algorithm: str) -> Trajectory:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    state = _coerce_state(x0, w.m, w.n)
    amap = agreement_map(w)
    flat = state.reshape(-1)
    states = [flat.copy()]
    errors = [consensus_error(flat, w.n)]
    residuals = [float(np.linalg.norm(amap @ flat))]
    streak = 1 if errors[0] < CONSENSUS_TOL else 0
    converged = streak >= CONSENSUS_STREAK
    for t in range(steps):
        if converged:
            break
        flat = apply_round(t, flat)
        states.append(flat.copy())
        err = consensus_error(flat, w.n)
        errors.append(err)
        residuals.append(float(np.linalg.norm(amap @ flat)))
        streak = streak + 1 if err < CONSENSUS_TOL else 0
        converged = streak >= CONSENSUS_STREAK
    stacked = np.stack(states).reshape(len(states), w.m, w.n)
    return Trajectory(
        algorithm=algorithm,
        states=stacked,
        consensus_errors=np.array(errors),
        residuals=np.array(residuals),
        converged=converged,
        steps_run=len(states) - 1,
    )


def run_gradient(
    w: WeightedNeighborGraph,
    x0,
    steps: int,
    stepsize: StepsizeSchedule | None = None,
) -> Trajectory:
    """Diminishing-step descent of ||C Jbar' x||^2 on a symmetric graph:
    x(t+1) = x(t) - alpha(t) Jbar C'C Jbar' x(t), on the raw weights."""
    _require_symmetric(w.graph, "the gradient iteration")
    stepsize = stepsize or StepsizeSchedule.harmonic()
    return _run(w, x0, steps, _gradient_step(w, stepsize), "gradient")


def run_fixed_step(w: WeightedNeighborGraph, x0, steps: int) -> Trajectory:
    """Fully distributed fixed-step iteration on a symmetric graph:
    x(t+1) = (I - Dbar Jbar C'C Jbar') x(t) with per-agent damping
    1/(2(d_i+1)) and row-orthonormalized weights."""
    _require_symmetric(w.graph, "the fixed-step iteration")
    return _run(w, x0, steps, _fixed_step(w), "fixed_step")


def run_metropolis_tv(w: WeightedNeighborGraph, x0, schedule: Schedule, steps: int) -> Trajectory:
    """Time-varying Metropolis iteration over scheduled symmetric spanning
    subgraphs: x(t+1) = (I - 1/2 Jbar(t) C' Wbar(t) C Jbar'(t)) x(t)."""
    _require_symmetric(w.graph, "the Metropolis iteration")
    schedule.validate_for(w.graph)
    if schedule.mode == "scripted" and schedule.script is not None and steps > len(schedule.script):
        raise ValueError(f"schedule script covers {len(schedule.script)} rounds, requested {steps}")
    cache = {}

    def apply(t, flat):
        idx = schedule.index_at(t)
        if idx not in cache:
            cache[idx] = _metropolis_step(w, schedule.subgraphs[idx])
        return cache[idx](t, flat)

    return _run(w, x0, steps, apply, "metropolis_tv")


def run_cycle_projection(w: WeightedNeighborGraph, x0, steps: int, project_init: bool = False) -> Trajectory:
    """Directed-cycle iteration x_i(t+1) = x_i(t) - 1/2 P_i (x_i(t) - x_pred(t)),
    with P_i the projection for the arc into i.

    With project_init, each x_i(0) is first replaced by P_i x_i(0); the run
    then reaches consensus whether or not the cycle is well-configured.
    """
    if not is_directed_cycle(w.graph):
        raise ValueError("cycle projection requires a directed cycle")
    state = _coerce_state(x0, w.m, w.n)
    if project_init:
        wn = w.normalized()
        for j, i in w.graph.arcs:
            c = wn.weight((j, i))
            state[i - 1] = c.T @ (c @ state[i - 1])
    return _run(w, state, steps, _projection_step(w), "cycle_projection")


def run_general_projection(w: WeightedNeighborGraph, x0, steps: int) -> Trajectory:
    """Projection iteration on any directed graph:
    x_i(t+1) = x_i(t) - 1/(d_i+1) sum_j P_ji (x_i(t) - x_j(t)).

    No convergence guarantee: the round map can have non-consensus fixed
    points even on well-configured graphs.
    """
    return _run(w, x0, steps, _projection_step(w), "general_projection")


def build_update_matrix(
    algorithm: str,
    w: WeightedNeighborGraph,
    subgraph: DirectedGraph | None = None,
) -> np.ndarray:
    """The dense mn x mn linear map applied each round.

    Applying it agrees with the corresponding run operation to machine
    precision.  The gradient iteration has no fixed round map (its stepsize
    varies), so it is not listed here.
    """
    if algorithm not in ("fixed_step", "metropolis_tv", "cycle_projection", "general_projection"):
        raise ValueError(f"no fixed round matrix for algorithm {algorithm!r}")
    wn = w.normalized()
    g = w.graph
    eye = np.eye(g.m * w.n)
    cn = stacked_weights(wn)
    if algorithm == "fixed_step":
        _require_symmetric(g, "the fixed-step iteration")
        jbar = np.kron(incidence_matrix(g), np.eye(w.n))
        damp = np.diag(_damping(g, w.n, half=True))
        return eye - damp @ jbar @ cn.T @ cn @ jbar.T
    if algorithm == "metropolis_tv":
        _require_symmetric(g, "the Metropolis iteration")
        sub = subgraph if subgraph is not None else g
        jbar = np.kron(spanning_incidence_matrix(g, sub), np.eye(w.n))
        wrep = np.diag(np.repeat(spanning_weight_matrix(g, sub).diagonal(), _block_rows(wn)))
        return eye - 0.5 * jbar @ cn.T @ wrep @ cn @ jbar.T
    if algorithm == "cycle_projection" and not is_directed_cycle(g):
        raise ValueError("cycle projection requires a directed cycle")
    inc = incidence_matrix(g)
    jbar_t = np.kron(inc, np.eye(w.n)).T
    jplus_bar = np.kron(np.clip(inc, 0.0, None), np.eye(w.n))
    damp = np.diag(_damping(g, w.n, half=False))
    return eye - damp @ jplus_bar @ cn.T @ cn @ jbar_t


def stacked_laplacian(
    w: WeightedNeighborGraph,
    subgraph: DirectedGraph | None = None,
    arc_weights: np.ndarray | None = None,
    normalized: bool = False,
) -> np.ndarray:
    """Jbar C' W C Jbar' for the given (sub)graph and per-arc scalars.

    With no options this is the positive-semidefinite map whose quadratic
    form is ||C Jbar' x||^2; its kernel is the local-agreement set.
    """
    wn = w.normalized() if normalized else w
    g = w.graph
    inc = incidence_matrix(g) if subgraph is None else spanning_incidence_matrix(g, subgraph)
    jbar = np.kron(inc, np.eye(w.n))
    c = stacked_weights(wn)
    if arc_weights is None:
        middle = c.T @ c
    else:
        arc_weights = np.asarray(arc_weights, dtype=float)
        if arc_weights.shape != (g.d,):
            raise ValueError(f"arc_weights must have shape ({g.d},)")
        wrep = np.repeat(arc_weights, _block_rows(wn))
        middle = c.T @ np.diag(wrep) @ c
    return jbar @ middle @ jbar.T


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalue bookkeeping for a round map or quadratic-form matrix.

    ones/zeros/inside_unit/outside partition the spectrum by modulus at the
    counting tolerance; paracontracting is only decided for symmetric input.
    """

    eigenvalues: np.ndarray
    ones: int
    zeros: int
    inside_unit: int
    outside: int
    symmetric: bool
    paracontracting: bool | None
    mixed_norm: float
    one_eigenspace_dim: int
    degenerate: bool

    def summary_dict(self) -> dict:
        return {
            "ones": self.ones,
            "zeros": self.zeros,
            "inside_unit": self.inside_unit,
            "outside": self.outside,
        }

    def to_json(self) -> dict:
        out = self.summary_dict()
        out.update(
            symmetric=self.symmetric,
            paracontracting=self.paracontracting,
            mixed_norm=self.mixed_norm,
            one_eigenspace_dim=self.one_eigenspace_dim,
            degenerate=self.degenerate,
            eigenvalues_real=[float(v) for v in np.real(self.eigenvalues)],
            eigenvalues_imag=[float(v) for v in np.imag(self.eigenvalues)],
        )
        return out


def spectral_report(mat: np.ndarray, n: int, tol: float = EIG_COUNT_TOL) -> SpectralReport:
    """Count eigenvalues at 1, at 0, strictly inside the unit circle, and
    everything else, plus the paracontraction verdict and mixed norm."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("spectral report needs a square matrix")
    symmetric = bool(np.allclose(mat, mat.T, atol=1e-12, rtol=0.0))
    eig = np.linalg.eigvalsh(mat) if symmetric else np.linalg.eigvals(mat)
    modulus = np.abs(eig)
    at_one = np.abs(eig - 1.0) <= tol
    at_zero = modulus <= tol
    inside = (modulus < 1.0 - tol) & ~at_one & ~at_zero
    ones = int(np.sum(at_one))
    zeros = int(np.sum(at_zero))
    inside_unit = int(np.sum(inside))
    outside = int(eig.size - ones - zeros - inside_unit)
    paracontracting: bool | None = None
    if symmetric:
        paracontracting = bool(np.min(eig) > -1.0 + tol and np.max(eig) <= 1.0 + tol)
    return SpectralReport(
        eigenvalues=eig,
        ones=ones,
        zeros=zeros,
        inside_unit=inside_unit,
        outside=outside,
        symmetric=symmetric,
        paracontracting=paracontracting,
        mixed_norm=mixed_norm_2_inf(mat, n),
        one_eigenspace_dim=kernel_basis(mat - np.eye(mat.shape[0])).shape[1],
        degenerate=ones == eig.size,
    )

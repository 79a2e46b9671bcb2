"""Well-configuration: when does local agreement force consensus?

Every arc (j, i) carries a matrix C_ji, and agent i only ever sees C_ji x_j.
The weighted graph is well-configured when the only states with
C_ji x_i = C_ji x_j along every arc are full-consensus states, i.e. when the
kernel of the stacked map C Jbar' is exactly the consensus span.  This module
assembles those stacked matrices, verifies the property two independent ways,
checks the specialized cycle/path criteria, and synthesizes weight matrices
from ear decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .graphs import (
    Arc,
    DirectedGraph,
    EarDecomposition,
    ear_decomposition,
    incidence_matrix,
    is_weakly_connected,
    symmetric_ear_decomposition,
    validate_ear_decomposition,
)
from .linalg import (
    RANK_RTOL,
    block_diag,
    column_space_basis,
    kernel_basis,
    matrix_rank,
    row_space_basis,
    subspace_family_independent,
    subspace_intersection,
)

SYNTHESIS_MODES = ("free", "nonzero-kernels")


class InfeasibleSynthesisError(ValueError):
    """Requested nonzero kernels but some ear is longer than the state dim."""


@dataclass(frozen=True, eq=False)
class WeightedNeighborGraph:
    """A directed graph plus one transmit matrix per arc.

    Matrices have n columns; row counts are unconstrained (fewer rows than
    columns means the neighbor's state is not recoverable from the signal).
    """

    graph: DirectedGraph
    n: int
    weights: Mapping[Arc, np.ndarray]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("state dimension must be >= 1")
        clean: dict[Arc, np.ndarray] = {}
        for raw_arc, mat in self.weights.items():
            arc = (int(raw_arc[0]), int(raw_arc[1]))
            mat = np.atleast_2d(np.asarray(mat, dtype=float)).copy()
            if mat.size == 0:
                mat = np.zeros((0, self.n))  # nothing transmitted on this arc
            if mat.shape[1] != self.n:
                raise ValueError(f"weight for arc {arc} must have {self.n} columns, has {mat.shape[1]}")
            if not np.all(np.isfinite(mat)):
                raise ValueError(f"weight for arc {arc} has non-finite entries")
            mat.flags.writeable = False
            clean[arc] = mat
        missing = set(self.graph.arcs) - clean.keys()
        extra = clean.keys() - set(self.graph.arcs)
        if missing or extra:
            raise ValueError(f"weights must cover the arc set exactly (missing {sorted(missing)}, extra {sorted(extra)})")
        object.__setattr__(self, "weights", clean)

    @property
    def m(self) -> int:
        return self.graph.m

    def weight(self, arc: Arc) -> np.ndarray:
        return self.weights[arc]

    def kernel(self, arc: Arc, rtol: float = RANK_RTOL) -> np.ndarray:
        return kernel_basis(self.weights[arc], rtol)

    def normalized(self, rtol: float = RANK_RTOL) -> "WeightedNeighborGraph":
        """Replace every weight by an orthonormal basis of its row space.

        Kernels are preserved, so the well-configuration verdict is too; the
        algorithms that use projections assume this form.
        """
        return WeightedNeighborGraph(
            self.graph, self.n, {arc: row_space_basis(c, rtol) for arc, c in self.weights.items()}
        )


def identity_weights(g: DirectedGraph, n: int) -> WeightedNeighborGraph:
    """Full-information weights: every arc transmits the whole state."""
    return WeightedNeighborGraph(g, n, {arc: np.eye(n) for arc in g.arcs})


def consensus_span(m: int, n: int) -> np.ndarray:
    """Orthonormal basis of the consensus subspace of R^(mn)."""
    return np.kron(np.ones((m, 1)), np.eye(n)) / np.sqrt(m)


def _incidence_for_order(m: int, order: Sequence[Arc]) -> np.ndarray:
    out = np.zeros((m, len(order)))
    for k, (j, i) in enumerate(order):
        out[i - 1, k] = 1.0
        out[j - 1, k] = -1.0
    return out


def _resolve_order(w: WeightedNeighborGraph, arc_order) -> tuple[Arc, ...]:
    if arc_order is None:
        return w.graph.arcs
    order = tuple((int(j), int(i)) for j, i in arc_order)
    if sorted(order) != sorted(w.graph.arcs):
        raise ValueError("arc_order must be a permutation of the graph's arcs")
    return order


def stacked_weights(w: WeightedNeighborGraph, arc_order=None) -> np.ndarray:
    """Block-diagonal stack of the per-arc matrices, one block per arc.

    Defaults to canonical arc order; the well-configuration verdict is
    invariant under any consistent reordering.
    """
    order = _resolve_order(w, arc_order)
    return block_diag([w.weights[arc] for arc in order])


def lifted_incidence(g: DirectedGraph, n: int) -> np.ndarray:
    """Incidence matrix lifted blockwise to the n-dimensional state."""
    return np.kron(incidence_matrix(g), np.eye(n))


def agreement_map(w: WeightedNeighborGraph, arc_order=None) -> np.ndarray:
    """The stacked map whose kernel is the set of local-agreement states.

    Row block k evaluates C_k (x_i - x_j) for the k-th arc (j, i).
    """
    order = _resolve_order(w, arc_order)
    jbar_t = np.kron(_incidence_for_order(w.m, order).T, np.eye(w.n))
    return stacked_weights(w, order) @ jbar_t


def agreement_kernel(w: WeightedNeighborGraph, rtol: float = RANK_RTOL, arc_order=None) -> np.ndarray:
    """Orthonormal basis of all local-agreement states in R^(mn)."""
    return kernel_basis(agreement_map(w, arc_order), rtol)


@dataclass(frozen=True)
class WellConfigReport:
    well_configured: bool
    kernel_dim: int
    m: int
    n: int
    witness: np.ndarray | None  # (m, n); local agreement without consensus

    def __bool__(self) -> bool:
        return self.well_configured

    def to_json(self) -> dict:
        out = {"well_configured": self.well_configured, "kernel_dim": self.kernel_dim}
        if self.witness is not None:
            out["witness"] = self.witness.tolist()
        return out


def is_well_configured(w: WeightedNeighborGraph, rtol: float = RANK_RTOL, arc_order=None) -> WellConfigReport:
    """Verdict on whether local agreement forces consensus.

    Compares the local-agreement kernel with the consensus span by dimension
    (consensus states always agree locally, so the kernel contains them).  On
    failure the report carries a witness: a unit-norm local-agreement state
    orthogonal to consensus.

    Refuses graphs that are not weakly connected: consensus is impossible
    across components and the overlap formulation would not be equivalent.
    """
    if not is_weakly_connected(w.graph):
        raise ValueError(
            "well-configuration requires a weakly connected graph; "
            "disconnected agents can never be forced to agree"
        )
    kernel = agreement_kernel(w, rtol, arc_order)
    dim = kernel.shape[1]
    ok = dim == w.n
    witness = None
    if not ok:
        base = consensus_span(w.m, w.n)
        resid = kernel - base @ (base.T @ kernel)
        norms = np.linalg.norm(resid, axis=0)
        pick = int(np.argmax(norms))
        witness = (resid[:, pick] / norms[pick]).reshape(w.m, w.n)
    return WellConfigReport(ok, dim, w.m, w.n, witness)


def disagreement_overlap_dim(w: WeightedNeighborGraph, rtol: float = RANK_RTOL) -> int:
    """Dimension of (image of the lifted incidence transpose) meet (kernel of
    the stacked weights), in per-arc signal space.

    Zero overlap is the second, equivalent formulation of well-configuration
    for weakly connected graphs.
    """
    jbar_t = lifted_incidence(w.graph, w.n).T
    image = column_space_basis(jbar_t, rtol)
    ker = kernel_basis(stacked_weights(w), rtol)
    if image.shape[1] == 0 or ker.shape[1] == 0:
        return 0
    total = matrix_rank(np.hstack([image, ker]), rtol)
    return image.shape[1] + ker.shape[1] - total


def is_well_configured_via_overlap(w: WeightedNeighborGraph, rtol: float = RANK_RTOL) -> bool:
    if not is_weakly_connected(w.graph):
        raise ValueError(
            "well-configuration requires a weakly connected graph; "
            "disconnected agents can never be forced to agree"
        )
    return disagreement_overlap_dim(w, rtol) == 0


def cycle_criterion(kernels, rtol: float = RANK_RTOL) -> bool:
    """Directed cycle verdict: well-configured iff the arc kernels form an
    independent family."""
    return subspace_family_independent(kernels, rtol)


def reduced_cycle_criterion(kernels, pinned: set[int], rtol: float = RANK_RTOL) -> bool:
    """Cycle verdict when the arcs at the pinned positions already force
    equality: only the remaining kernels must be independent.

    `pinned` holds indices into `kernels` for arcs whose endpoints are known
    equal; how such a set would be known a priori is up to the caller.
    """
    keep = [k for idx, k in enumerate(kernels) if idx not in pinned]
    return subspace_family_independent(keep, rtol)


def broadcast_pair_criterion(k12, k21, k31, k32, rtol: float = RANK_RTOL) -> bool:
    """Verdict for the two-agents-plus-broadcaster graph with arcs
    (1,2), (2,1), (3,1), (3,2): independence of the intersection of the pair
    kernels together with the two broadcast kernels."""
    return subspace_family_independent([subspace_intersection(k12, k21, rtol), k31, k32], rtol)


def backlinked_cycle_criterion(k1, k2, k3, k4, rtol: float = RANK_RTOL) -> bool:
    """Verdict for the triangle-with-back-arc graph, arcs
    (1,2), (2,3), (3,1), (2,1) carrying kernels k1..k4 in that order."""
    return subspace_family_independent([subspace_intersection(k1, k4, rtol), k2, k3], rtol)


def axis_complement(n: int, axis: int) -> np.ndarray:
    """(n-1) x n orthonormal rows whose kernel is the given coordinate axis."""
    return np.delete(np.eye(n), axis, axis=0)


def _check_mode(mode: str) -> None:
    if mode not in SYNTHESIS_MODES:
        raise ValueError(f"mode must be one of {SYNTHESIS_MODES}, got {mode!r}")


def synthesize_weights(
    g: DirectedGraph,
    n: int,
    decomposition: EarDecomposition | None = None,
    mode: str = "free",
) -> WeightedNeighborGraph:
    """Construct weights that make a strongly connected graph well-configured.

    Walks an ear decomposition and gives the t-th arc of each ear a
    one-dimensional kernel along coordinate axis t, so the kernels within
    every ear are trivially an independent family.  In "nonzero-kernels" mode
    an ear longer than n is refused; in "free" mode the overflow arcs fall
    back to full-information identity weights.
    """
    _check_mode(mode)
    if decomposition is None:
        decomposition = ear_decomposition(g)
    else:
        if decomposition.symmetric:
            raise ValueError("got a symmetric decomposition; use synthesize_symmetric_weights")
        validate_ear_decomposition(g, decomposition)
    weights: dict[Arc, np.ndarray] = {}
    for ear in decomposition.ears:
        if mode == "nonzero-kernels" and ear.length > n:
            raise InfeasibleSynthesisError(
                f"ear of length {ear.length} exceeds state dimension {n}; "
                f"nonzero kernels require max ear length <= n"
            )
        for t, arc in enumerate(ear.arcs):
            weights[arc] = axis_complement(n, t) if t < n else np.eye(n)
    return WeightedNeighborGraph(g, n, weights)


def synthesize_symmetric_weights(
    g: DirectedGraph,
    n: int,
    decomposition: EarDecomposition | None = None,
    mode: str = "free",
) -> WeightedNeighborGraph:
    """Like synthesize_weights but with equal matrices in both directions.

    Requires a 2-connected symmetric graph.  Each two-length cycle of a
    symmetric ear gets one kernel axis, shared by both of its arcs; the s-th
    pair of an ear with more than n pairs is refused in "nonzero-kernels"
    mode and padded with identities in "free" mode.
    """
    _check_mode(mode)
    if decomposition is None:
        decomposition = symmetric_ear_decomposition(g)
    else:
        if not decomposition.symmetric:
            raise ValueError("synthesize_symmetric_weights needs a symmetric decomposition")
        validate_ear_decomposition(g, decomposition)
    weights: dict[Arc, np.ndarray] = {}
    for ear in decomposition.ears:
        if mode == "nonzero-kernels" and ear.pair_count > n:
            raise InfeasibleSynthesisError(
                f"symmetric ear with {ear.pair_count} two-length cycles exceeds state "
                f"dimension {n}; nonzero kernels require max ear length <= n"
            )
        for s in range(ear.pair_count):
            j, i = ear.arcs[2 * s]
            mat = axis_complement(n, s) if s < n else np.eye(n)
            weights[(j, i)] = mat
            weights[(i, j)] = mat
    return WeightedNeighborGraph(g, n, weights)


def weights_to_json(w: WeightedNeighborGraph) -> dict:
    """Serialize as {m, n, arcs: [{j, i, C}]} in canonical arc order."""
    return {
        "m": w.m,
        "n": w.n,
        "arcs": [
            {"j": j, "i": i, "C": [list(row) for row in w.weights[(j, i)]]}
            for j, i in w.graph.arcs
        ],
    }


def weights_from_json(data: dict) -> WeightedNeighborGraph:
    unknown = set(data) - {"m", "n", "arcs"}
    if unknown:
        raise ValueError(f"unknown weight-file keys: {sorted(unknown)}")
    entries = data["arcs"]
    arcs = []
    weights = {}
    for entry in entries:
        bad = set(entry) - {"j", "i", "C"}
        if bad:
            raise ValueError(f"unknown arc keys: {sorted(bad)}")
        arc = (int(entry["j"]), int(entry["i"]))
        arcs.append(arc)
        weights[arc] = np.asarray(entry["C"], dtype=float)
    graph = DirectedGraph(int(data["m"]), tuple(arcs))
    return WeightedNeighborGraph(graph, int(data["n"]), weights)

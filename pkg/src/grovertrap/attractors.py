"""Checks on common eigenstates and on the attractor space of the walk.

Vector checks (coin, shift, common eigenstate) run in exact arithmetic.
The attractor space is computed numerically by intersecting the kernels
of ``X -> U_K X U_K^dag - lambda X`` over all configurations ``K``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import StateGraph, WalkInstance
from .simulator import configurations, walk_operator
from .trapped import TrappedState, expected_dimension

ATTRACTOR_DIM_CAP = 20
RANK_TOL = 1e-8


def _vec(phi: TrappedState | Sequence, dim: int) -> list[Fraction]:
    if isinstance(phi, TrappedState):
        return phi.vector(dim)
    return [Fraction(x) for x in phi]


def apply_coin(sg: StateGraph, vec: Sequence[Fraction]) -> list[Fraction]:
    out = list(vec)
    for v in range(sg.n_vertices):
        idx = sg.vertex_edges(v)
        if not idx:
            continue
        mean2 = 2 * sum((vec[e] for e in idx), Fraction(0)) / len(idx)
        for e in idx:
            out[e] = mean2 - vec[e]
    return out


def apply_shift(sg: StateGraph, vec: Sequence[Fraction], open_edges) -> list[Fraction]:
    out = list(vec)
    for a, b in sg.pairs():
        if sg.directed_edges[a].support in open_edges:
            out[a], out[b] = vec[b], vec[a]
    return out


def check_coin_condition(phi, lam: int, sg: StateGraph) -> bool:
    """``G_d phi_v = lam phi_v`` at every vertex."""
    vec = _vec(phi, sg.dim)
    return apply_coin(sg, vec) == [lam * x for x in vec]


def check_shift_condition(phi, sg: StateGraph) -> bool:
    vec = _vec(phi, sg.dim)
    return all(vec[a] == vec[b] for a, b in sg.pairs())


def check_common_eigenstate(
    phi, lam: int, inst: WalkInstance, mode: str | int = "exhaustive", seed: int = 0
) -> bool:
    """``U_K phi = lam phi`` for every configuration (or ``mode`` sampled ones)."""
    sg = inst.state_graph
    vec = _vec(phi, sg.dim)
    if not any(vec):
        return False
    target = [lam * x for x in vec]
    coined = apply_coin(sg, vec)
    n = len(inst.graph.edges)
    if mode == "exhaustive":
        configs = (K for K, _ in configurations(n, 0.5))
    else:
        rng = random.Random(seed)
        configs = (frozenset(i for i in range(n) if rng.random() < 0.5) for _ in range(int(mode)))
    return all(apply_shift(sg, coined, K) == target for K in configs)


# ------------------------------------------------------------ attractor space


def _configuration_operators(inst: WalkInstance) -> list[np.ndarray]:
    sg = inst.state_graph
    return [walk_operator(sg, K) for K, _ in configurations(len(inst.graph.edges), 0.5)]


def attractor_space(inst: WalkInstance, lam: complex, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns, row-major ``vec(X)``) of attractors for ``lam``.

    Starts from the whole matrix space and shrinks it by the kernel of
    ``U_K (x) conj(U_K) - lam`` for one configuration at a time.
    """
    D = inst.dim
    if D > ATTRACTOR_DIM_CAP:
        raise ValueError(f"dimension {D} exceeds the attractor cap of {ATTRACTOR_DIM_CAP}")
    Q = np.eye(D * D, dtype=complex)
    for U in _configuration_operators(inst):
        if Q.shape[1] == 0:
            break
        M = (np.kron(U, U.conj()) - lam * np.eye(D * D)) @ Q
        _, s, vh = np.linalg.svd(M)
        r = int((s > tol).sum())
        Q = Q @ vh[r:].conj().T
    return Q


@dataclass
class AttractorReport:
    dims: dict[int, int]  # eigenvalue -> numerical attractor dimension
    p_counts: dict[int, int]  # eigenvalue -> number of p-attractors
    n_minus: int  # -1 common eigenstates
    spectrum: list[complex] = field(default_factory=list)  # modulus-one eigenvalues of the mixed map

    @property
    def expected(self) -> dict[int, int]:
        return {1: self.p_counts[1] + 1, -1: self.p_counts[-1]}

    @property
    def matches(self) -> bool:
        return self.dims == self.expected

    @property
    def total(self) -> int:
        return sum(self.dims.values())


def p_attractor_counts(inst: WalkInstance) -> tuple[dict[int, int], int]:
    """Products ``|a><b|`` of common eigenstates grouped by ``alpha * conj(beta)``."""
    m = expected_dimension(inst.graph)
    return {1: 1 + m * m, -1: 2 * m}, m


def modulus_one_spectrum(inst: WalkInstance, pi: float = 0.5, tol: float = 1e-9) -> list[complex]:
    D = inst.dim
    S = np.zeros((D * D, D * D), dtype=complex)
    for K, w in configurations(len(inst.graph.edges), pi):
        U = walk_operator(inst.state_graph, K)
        S += w * np.kron(U, U.conj())
    ev = np.linalg.eigvals(S)
    return sorted((complex(x) for x in ev if abs(abs(x) - 1) < tol), key=lambda z: (z.real, z.imag))


def attractor_space_dimension(inst: WalkInstance, tol: float = RANK_TOL) -> AttractorReport:
    """Numerical attractor dimensions for a sink-free instance, next to the p-attractor count."""
    if inst.sink:
        raise ValueError("attractor space is computed for the walk without a sink")
    counts, m = p_attractor_counts(inst)
    dims = {lam: attractor_space(inst, lam, tol).shape[1] for lam in (1, -1)}
    return AttractorReport(dims, counts, m, modulus_one_spectrum(inst))


def attractor_matrices(inst: WalkInstance, tol: float = RANK_TOL) -> list[tuple[int, np.ndarray]]:
    """Orthonormal attractor basis as ``(lambda, X)`` pairs."""
    D = inst.dim
    out = []
    for lam in (1, -1):
        Q = attractor_space(inst, lam, tol)
        out += [(lam, Q[:, k].reshape(D, D)) for k in range(Q.shape[1])]
    return out


# ------------------------------------------------------- element-wise shift


@dataclass(frozen=True)
class ShiftCheck:
    attractor: bool  # element-wise shift condition for general attractors
    p_attractor: bool  # additionally X[e, e] == X[e, partner(e)]
    residual: float


def check_attractor_shift_elementwise(X: np.ndarray, sg: StateGraph, tol: float = 1e-10) -> ShiftCheck:
    X = np.asarray(X)
    t = np.array([sg.partner(e) for e in range(sg.dim)])
    res = 0.0
    for e in range(sg.dim):
        te = t[e]
        others = np.array([f for f in range(sg.dim) if f != e and f != te])
        if len(others):
            row = X[e, others]
            res = max(
                res,
                np.abs(row - X[te, others]).max(),
                np.abs(row - X[e, t[others]]).max(),
                np.abs(row - X[te, t[others]]).max(),
            )
        res = max(res, abs(X[e, e] - X[te, te]), abs(X[e, te] - X[te, e]))
    p_res = max(abs(X[e, e] - X[e, t[e]]) for e in range(sg.dim))
    return ShiftCheck(bool(res < tol), bool(res < tol and p_res < tol), float(max(res, p_res)))


def split_identity(X: np.ndarray, sg: StateGraph, tol: float = 1e-10) -> tuple[complex, np.ndarray] | None:
    """Write ``X = z I + Y`` with ``Y`` obeying the p-attractor equality.

    The equality ``Y[e, e] = Y[e, partner(e)]`` fixes ``z`` from any paired
    edge; returns ``None`` when the pairs disagree on ``z`` or when the
    remainder is not an attractor in the p-sense.
    """
    X = np.asarray(X, dtype=complex)
    zs = [X[a, a] - X[a, b] for a, b in sg.pairs()] + [X[b, b] - X[b, a] for a, b in sg.pairs()]
    if not zs:
        return None
    z = zs[0]
    if any(abs(w - z) > tol for w in zs):
        return None
    Y = X - z * np.eye(sg.dim)
    if not check_attractor_shift_elementwise(Y, sg, tol).p_attractor:
        return None
    return complex(z), Y


def alternating_edge_attractor(inst: WalkInstance) -> np.ndarray | None:
    """Diagonal attractor with alternating signs along an even cycle graph.

    Exists exactly when every vertex has degree two and the cycle is even;
    it has eigenvalue -1 and is not built from common eigenstates.
    """
    g = inst.graph
    if g.n_loops or any(g.degree(v) != 2 for v in g.vertices) or len(g.edges) % 2:
        return None
    adj = g.adjacency()
    sign = {0: 1.0}
    v, prev_edge = 0, None
    order = []
    for _ in range(len(g.edges)):
        (w1, e1), (w2, e2) = adj[v]
        nxt, e = (w1, e1) if e1 != prev_edge else (w2, e2)
        order.append(e)
        v, prev_edge = nxt, e
    for k, e in enumerate(order):
        sign[e] = (-1.0) ** k
    d = np.zeros(inst.dim)
    for e, s in sign.items():
        d[2 * e] = d[2 * e + 1] = s
    return np.diag(d)

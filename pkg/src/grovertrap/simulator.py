"""Density-matrix simulation of the percolated Grover walk with a sink.

One step maps ``rho -> sum_K pi_K  P U_K rho U_K^dag P`` where
``U_K = R_K C``, ``C`` is the block-diagonal Grover coin, ``R_K`` swaps
the directed edges of every open edge in ``K`` and ``P`` removes the
sink subspace.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .graph import StateGraph, WalkInstance

EXACT_EDGE_CAP = 14


class ExactModeCapError(ValueError):
    pass


def grover_matrix(d: int) -> np.ndarray:
    return np.full((d, d), 2.0 / d) - np.eye(d)


def coin_operator(sg: StateGraph) -> np.ndarray:
    C = np.zeros((sg.dim, sg.dim))
    for v in range(sg.n_vertices):
        idx = list(sg.vertex_edges(v))
        if idx:
            C[np.ix_(idx, idx)] = grover_matrix(len(idx))
    return C


def shift_permutation(sg: StateGraph, open_edges) -> np.ndarray:
    """Index array ``p`` with ``(R_K x)[i] = x[p[i]]``."""
    perm = np.arange(sg.dim)
    for a, b in sg.pairs():
        if sg.directed_edges[a].support in open_edges:
            perm[a], perm[b] = b, a
    return perm


def shift_operator(sg: StateGraph, open_edges) -> np.ndarray:
    """Permutation matrix ``R_K``; closed edges act like unpaired loops."""
    return np.eye(sg.dim)[shift_permutation(sg, open_edges)]


def walk_operator(sg: StateGraph, open_edges) -> np.ndarray:
    return shift_operator(sg, open_edges) @ coin_operator(sg)


def configurations(n_edges: int, pi: float) -> Iterator[tuple[frozenset[int], float]]:
    """All open-edge sets with their probabilities ``pi^|K| (1-pi)^(n-|K|)``."""
    for bits in itertools.product((0, 1), repeat=n_edges):
        k = sum(bits)
        yield frozenset(i for i, b in enumerate(bits) if b), pi**k * (1 - pi) ** (n_edges - k)


def keep_mask(inst: WalkInstance) -> np.ndarray:
    """Diagonal of the projector onto the complement of the sink subspace."""
    mask = np.ones(inst.dim)
    mask[inst.sink_edges()] = 0.0
    return mask


def _project(rho: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return rho * np.outer(mask, mask)


def step_exact(rho: np.ndarray, inst: WalkInstance, pi: float = 0.5, cap: int = EXACT_EDGE_CAP) -> np.ndarray:
    """One sinked step summed over every percolation configuration."""
    n_edges = len(inst.graph.edges)
    if n_edges > cap:
        raise ExactModeCapError(f"{n_edges} edges exceed the exact-mode cap of {cap}; use Monte Carlo mode")
    sg = inst.state_graph
    crho = coin_operator(sg) @ rho @ coin_operator(sg).conj().T
    out = np.zeros_like(crho, dtype=complex)
    for K, w in configurations(n_edges, pi):
        if w == 0.0:
            continue
        p = shift_permutation(sg, K)
        out += w * crho[np.ix_(p, p)]
    return _project(out, keep_mask(inst))


class _FactorizedStep:
    """Same map as :func:`step_exact`, using independence of the edges.

    Averaging ``R_K X R_K`` over independent edges factorizes into one
    two-outcome mixture per edge, so a step costs ``O(|E| D^2)`` instead of
    ``O(2^|E| D^2)``.
    """

    def __init__(self, inst: WalkInstance, pi: float):
        sg = inst.state_graph
        self.C = coin_operator(sg)
        self.pi = pi
        self.swaps = []
        for a, b in sg.pairs():
            p = np.arange(sg.dim)
            p[a], p[b] = b, a
            self.swaps.append(p)
        self.keep = np.outer(keep_mask(inst), keep_mask(inst))

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        x = self.C @ rho @ self.C.T
        for p in self.swaps:
            x = (1 - self.pi) * x + self.pi * x[np.ix_(p, p)]
        return x * self.keep


def step_mc(
    rho: np.ndarray, inst: WalkInstance, pi: float = 0.5, rng: np.random.Generator | int | None = None
) -> np.ndarray:
    """One sinked step for a single sampled configuration."""
    rng = np.random.default_rng(rng)
    sg = inst.state_graph
    K = frozenset(np.flatnonzero(rng.random(len(inst.graph.edges)) < pi).tolist())
    U = walk_operator(sg, K)
    return _project(U @ rho @ U.conj().T, keep_mask(inst))


@dataclass
class Trajectory:
    traces: np.ndarray  # traces[t] = Tr rho(t), t = 0..T
    errors: np.ndarray  # standard error of the mean (zero in exact mode)
    rho: np.ndarray  # final density matrix (sample mean in Monte Carlo mode)
    converged: bool

    @property
    def steps(self) -> int:
        return len(self.traces) - 1

    @property
    def limit(self) -> float:
        return float(self.traces[-1])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "trace", "trace_error_estimate"])
            for t, (tr, err) in enumerate(zip(self.traces, self.errors)):
                w.writerow([t, repr(float(tr)), repr(float(err))])


def maximally_mixed(dim: int, edges: Sequence[int]) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[list(edges), list(edges)] = 1.0 / len(edges)
    return rho


def pure_density(psi) -> np.ndarray:
    v = np.asarray([complex(x) for x in psi])
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def _stalled(traces: list[float], tol: float, window: int) -> bool:
    return len(traces) > window and abs(traces[-1 - window] - traces[-1]) < tol


def simulate(
    rho0: np.ndarray,
    inst: WalkInstance,
    pi: float = 0.5,
    steps: int | None = None,
    mode: str = "exact",
    samples: int = 1000,
    seed: int | None = None,
    tol: float = 1e-6,
    window: int = 50,
    t_max: int = 10_000,
    cap: int = EXACT_EDGE_CAP,
) -> Trajectory:
    """Evolve ``rho0`` and record ``Tr rho(t)``.

    With ``steps=None`` the run stops once the trace moved by less than
    ``tol`` over the last ``window`` steps, or after ``t_max`` steps.
    ``mode="mc"`` averages ``samples`` independent single-configuration
    trajectories drawn from ``seed``.
    """
    if steps is not None and steps < 1:
        raise ValueError("steps must be >= 1")
    limit = t_max if steps is None else steps
    rho = np.asarray(rho0, dtype=complex)
    if mode == "exact":
        if len(inst.graph.edges) > cap:
            raise ExactModeCapError(
                f"{len(inst.graph.edges)} edges exceed the exact-mode cap of {cap}; use mode='mc'"
            )
        step = _FactorizedStep(inst, pi)
        traces = [float(np.trace(rho).real)]
        converged = False
        for _ in range(limit):
            rho = step(rho)
            traces.append(float(np.trace(rho).real))
            if steps is None and _stalled(traces, tol, window):
                converged = True
                break
        return Trajectory(np.array(traces), np.zeros(len(traces)), rho, converged)
    if mode == "mc":
        return _simulate_mc(rho, inst, pi, limit, samples, seed, steps is None, tol, window)
    raise ValueError(f"unknown mode {mode!r}; use 'exact' or 'mc'")


def _simulate_mc(rho0, inst, pi, limit, samples, seed, early_stop, tol, window) -> Trajectory:
    rng = np.random.default_rng(seed)
    sg = inst.state_graph
    C = coin_operator(sg)
    keep = np.outer(keep_mask(inst), keep_mask(inst))
    pairs = sg.pairs()
    n_edges = len(inst.graph.edges)
    supports = [sg.directed_edges[a].support for a, _ in pairs]
    rhos = np.repeat(rho0[None, :, :], samples, axis=0)
    tr = np.einsum("sii->s", rhos).real
    means, errs = [tr.mean()], [0.0]
    converged = False
    for _ in range(limit):
        rhos = np.einsum("ij,sjk,lk->sil", C, rhos, C)
        opened = rng.random((samples, n_edges)) < pi
        for (a, b), edge in zip(pairs, supports):
            hit = opened[:, edge]
            if hit.any():
                sub = rhos[hit]
                sub[:, [a, b], :] = sub[:, [b, a], :]
                sub[:, :, [a, b]] = sub[:, :, [b, a]]
                rhos[hit] = sub
        rhos *= keep
        tr = np.einsum("sii->s", rhos).real
        means.append(tr.mean())
        errs.append(tr.std(ddof=1) / np.sqrt(samples) if samples > 1 else 0.0)
        if early_stop and _stalled(means, tol, window):
            converged = True
            break
    return Trajectory(np.array(means), np.array(errs), rhos.mean(axis=0), converged)


# ---------------------------------------------------------------- asymptotics


def orthonormalize_attractors(items: Sequence[tuple[complex, np.ndarray]], tol: float = 1e-12):
    """Gram-Schmidt under ``<X, Y> = Tr(X^dag Y)`` within each eigenvalue."""
    out: list[tuple[complex, np.ndarray]] = []
    for lam, X in items:
        Y = np.asarray(X, dtype=complex).copy()
        for mu, Z in out:
            if np.isclose(mu, lam):
                Y -= np.vdot(Z, Y) * Z
        n = np.linalg.norm(Y)
        if n > tol:
            out.append((lam, Y / n))
    return out


def check_orthonormal(attractors: Sequence[tuple[complex, np.ndarray]], tol: float = 1e-12) -> None:
    for i, (_, X) in enumerate(attractors):
        for j, (_, Y) in enumerate(attractors[: i + 1]):
            g = np.vdot(Y, X)
            if abs(g - (i == j)) > tol:
                raise ValueError(f"attractors {j} and {i} are not orthonormal (overlap {g:.3g})")


def asymptotic_state(rho0: np.ndarray, attractors: Sequence[tuple[complex, np.ndarray]], t: int) -> np.ndarray:
    """``sum lambda^t Tr(rho0 X^dag) X`` over an orthonormal attractor basis."""
    check_orthonormal(attractors)
    rho0 = np.asarray(rho0, dtype=complex)
    out = np.zeros_like(rho0)
    for lam, X in attractors:
        out += lam**t * np.trace(rho0 @ X.conj().T) * X
    return out


def p_attractors(inst: WalkInstance) -> list[tuple[complex, np.ndarray]]:
    """Orthonormal attractors built from common eigenstates (plus identity without a sink).

    With a sink only the sink-resistant -1 states survive and every
    attractor has eigenvalue +1.  Without a sink the +1 all-ones state
    joins them, the products ``|ones><phi|`` give eigenvalue -1, and the
    identity is added as the one extra attractor.
    """
    from .trapped import sr_trapped_basis

    dim = inst.dim
    basis = [[float(x) for x in s.vector(dim)] for s in sr_trapped_basis(inst)]
    minus = list(np.linalg.qr(np.array(basis).T)[0].T) if basis else []
    items: list[tuple[complex, np.ndarray]] = [(1, np.outer(a, b.conj())) for a in minus for b in minus]
    if not inst.sink:
        ones = np.ones(dim) / np.sqrt(dim)
        items.append((1, np.outer(ones, ones)))
        items += [(-1, np.outer(ones, m.conj())) for m in minus]
        items += [(-1, np.outer(m, ones)) for m in minus]
        items.append((1, np.eye(dim)))
    return orthonormalize_attractors(items)

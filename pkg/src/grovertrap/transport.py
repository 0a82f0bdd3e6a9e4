"""Projector onto sink-resistant trapped states and transport probabilities.

The projector is assembled from a (generally non-orthogonal) basis ``B``
as ``B (B^T B)^-1 B^T``, so it stays exact and does not depend on which
basis was used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import rational
from .trapped import TrappedState


class DependentBasisError(ValueError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"basis state {index} is a linear combination of the states before it")


@dataclass(frozen=True)
class Projector:
    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def diagonal(self) -> list[Fraction]:
        return [self.matrix[i][i] for i in range(self.dim)]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(self.dim) for j in range(i))

    def is_idempotent(self) -> bool:
        m = [list(r) for r in self.matrix]
        return rational.matmul(m, m) == m

    def restrict(self, edges: Sequence[int]) -> list[list[Fraction]]:
        return [[self.matrix[i][j] for j in edges] for i in edges]


def projector(basis: Sequence[TrappedState], dim: int) -> Projector:
    if not basis:
        zero = tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))
        return Projector(zero, 0)
    cols = [s.vector(dim) for s in basis]
    if rational.rank(cols) < len(cols):
        for k in range(1, len(cols) + 1):
            if rational.rank(cols[:k]) < k:
                raise DependentBasisError(k - 1)
    gram = [[rational.dot(a, b) for b in cols] for a in cols]
    ginv = rational.inverse(gram)
    # P = B G^-1 B^T with B having the states as columns
    left = rational.matmul(rational.transpose(cols), ginv)  # dim x k
    full = rational.matmul(left, cols)
    return Projector(tuple(tuple(row) for row in full), len(cols))


@dataclass(frozen=True)
class PureState:
    """A (not necessarily normalized) amplitude vector over all directed edges."""

    amplitudes: tuple

    def support(self) -> set[int]:
        return {i for i, a in enumerate(self.amplitudes) if a != 0}


@dataclass(frozen=True)
class MaximallyMixed:
    edges: tuple[int, ...]


InitialState = Union[PureState, MaximallyMixed]


def _is_exact(values) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in values)


def trapped_weight(P: Projector, rho0: InitialState):
    """``Tr(P rho0)`` for a normalized version of ``rho0``."""
    if isinstance(rho0, MaximallyMixed):
        if not rho0.edges:
            raise ValueError("initial subspace is empty")
        return sum((P.matrix[e][e] for e in rho0.edges), Fraction(0)) / len(rho0.edges)
    psi = rho0.amplitudes
    if len(psi) != P.dim:
        raise ValueError(f"state has {len(psi)} amplitudes, projector acts on {P.dim}")
    if _is_exact(psi):
        psi = [Fraction(x) for x in psi]
        norm = rational.dot(psi, psi)
        if norm == 0:
            raise ValueError("zero state")
        support = [i for i, a in enumerate(psi) if a != 0]
        num = sum((psi[i] * P.matrix[i][j] * psi[j] for i in support for j in support), Fraction(0))
        return num / norm
    v = np.asarray(psi, dtype=complex)
    norm = np.vdot(v, v).real
    if norm == 0:
        raise ValueError("zero state")
    return float(np.vdot(v, P.to_numpy() @ v).real / norm)


def atp(P: Projector, rho0: InitialState):
    """Asymptotic transport probability ``1 - Tr(P rho0)``; exact for rational input."""
    return 1 - trapped_weight(P, rho0)


def average_atp(P: Projector, subspace: Sequence[int]) -> Fraction:
    """Transport probability of the maximally mixed state on ``subspace``."""
    return atp(P, MaximallyMixed(tuple(subspace)))


def atp_density(P: Projector, rho: np.ndarray) -> float:
    """``1 - Tr(P rho) / Tr(rho)`` for an arbitrary numeric density matrix."""
    rho = np.asarray(rho)
    return float(1 - np.trace(P.to_numpy() @ rho).real / np.trace(rho).real)


# ----------------------------------------------------------------- closed forms

_FAMILY_RANGES = {
    "multi_loop": {"n": 2},
    "star_single": {"n": 3, "L": 0},
    "star_full": {"n": 3, "L": 0},
    "minimal_a": {"L": 0},
    "minimal_b": {"L": 0},
    "minimal_c": {"L": 0},
    "minimal_d": {"L": 0},
    "hollow_prism_tri": {"H": 2},
}


def closed_form(family: str, **params: int) -> Fraction:
    """Average transport probability of the analytically solved graph families."""
    if family not in _FAMILY_RANGES:
        raise ValueError(f"no closed form for family {family!r}")
    need = _FAMILY_RANGES[family]
    missing = set(need) - set(params)
    if missing or set(params) - set(need):
        raise ValueError(f"{family} takes parameters {sorted(need)}, got {sorted(params)}")
    for key, low in need.items():
        if not isinstance(params[key], int) or params[key] < low:
            raise ValueError(f"{family}: {key} must be an integer >= {low}")
    F = Fraction
    p = params
    if family == "multi_loop":
        return F(2, p["n"])
    if family == "star_single":
        return 1 - F(1, 2 * p["L"] + 1) * (1 - F(1, p["n"] - 1))
    if family == "star_full":
        return 1 - F(1, 2 * p["L"] + 1) * (1 - F(2, p["n"]))
    if family == "minimal_a":
        return 1 - F(1, 8 + 4 * p["L"])
    if family == "minimal_b":
        return 1 - F(1, 12 + 8 * p["L"])
    if family == "minimal_c":
        return 1 - F(1, 2 + 2 * p["L"])
    if family == "minimal_d":
        return 1 - F(1, 10 + 8 * p["L"])
    H = p["H"]
    return 1 - F(1, 6) * (F(1, H + 1) + F(1, H + 2))

"""One-excitation sector of the Krawtchouk chain with next-to-nearest couplings.

Sites are numbered 1..N in the API (stored in array slot n-1).  The hopping
amplitudes J_n = sqrt(n(N-n))/2 are the recurrence coefficients of the
Krawtchouk polynomials; the one-excitation Hamiltonian is the pentadiagonal
operator with nearest couplings beta*J_n, next-to-nearest couplings
alpha*J_n*J_{n+1} and on-site terms alpha*(J_n^2 + J_{n-1}^2), which factors
exactly as alpha*J^2 + beta*J.  Evolution uses a full symmetric
eigendecomposition; N stays at desk scale, so exactness beats scalability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class ChainSpec:
    """Chain model parameters: N sites, NNN strength alpha, NN strength beta."""

    N: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.N < 2:
            raise InvalidInputError(f"chain needs at least 2 sites, got N = {self.N}")
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise InvalidInputError("alpha and beta must be finite")


class Couplings(NamedTuple):
    J: np.ndarray   # J_n = sqrt(n(N-n))/2 for n = 1..N-1
    J1: np.ndarray  # nearest couplings beta*J_n, n = 1..N-1
    J2: np.ndarray  # next-to-nearest couplings alpha*J_n*J_{n+1}, n = 1..N-2
    B: np.ndarray   # on-site terms alpha*(J_n^2 + J_{n-1}^2), n = 1..N


def couplings(spec: ChainSpec) -> Couplings:
    """All coupling arrays of the chain; J_0 = J_N = 0 make the on-site formula total."""
    N = spec.N
    n = np.arange(1, N)
    J = 0.5 * np.sqrt(n * (N - n))
    J1 = spec.beta * J
    J2 = spec.alpha * J[:-1] * J[1:]
    Jpad = np.concatenate(([0.0], J, [0.0]))  # J_0 .. J_N
    B = spec.alpha * (Jpad[1:N + 1] ** 2 + Jpad[0:N] ** 2)
    return Couplings(J=J, J1=J1, J2=J2, B=B)


@dataclass(frozen=True)
class ChainOperator:
    """Symmetric pentadiagonal one-excitation Hamiltonian."""

    diag: np.ndarray      # length N
    offdiag1: np.ndarray  # length N-1
    offdiag2: np.ndarray  # length N-2

    @property
    def N(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        h = np.diag(self.diag)
        h += np.diag(self.offdiag1, 1) + np.diag(self.offdiag1, -1)
        if len(self.offdiag2):
            h += np.diag(self.offdiag2, 2) + np.diag(self.offdiag2, -2)
        return h


def hopping_matrix(N: int) -> np.ndarray:
    """Dense tridiagonal J with J|n> = J_n|n+1> + J_{n-1}|n-1>."""
    n = np.arange(1, N)
    J = 0.5 * np.sqrt(n * (N - n))
    return np.diag(J, 1) + np.diag(J, -1)


def build_hamiltonian(spec: ChainSpec) -> ChainOperator:
    """Assemble the pentadiagonal operator and assert it equals alpha*J^2 + beta*J.

    The factorization is an exact identity; in floats the deviation is a few
    ulp of the largest entry, so the internal check scales the 1e-14 tolerance
    by max(1, |H|_max).
    """
    c = couplings(spec)
    op = ChainOperator(diag=c.B, offdiag1=c.J1, offdiag2=c.J2)
    J = hopping_matrix(spec.N)
    reference = spec.alpha * (J @ J) + spec.beta * J
    dev = np.abs(op.to_dense() - reference).max()
    scale = max(1.0, np.abs(reference).max())
    if dev > 1e-14 * scale:
        raise AssertionError(f"pentadiagonal operator deviates from alpha*J^2 + beta*J by {dev}")
    return op


def site_state(N: int, site: int) -> np.ndarray:
    """Unit basis vector for a single excitation at the given site (1-based)."""
    if not 1 <= site <= N:
        raise InvalidInputError(f"site must lie in [1, {N}], got {site}")
    psi = np.zeros(N, dtype=complex)
    psi[site - 1] = 1.0
    return psi


def chain_evolve(spec: ChainSpec, psi0: np.ndarray, tau: float) -> np.ndarray:
    """Evolve a one-excitation state: returns exp(-i tau H) psi0.

    The input must already be unit norm (no silent renormalization); the
    propagator is built from the dense symmetric eigendecomposition.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (spec.N,):
        raise InvalidInputError(f"state must have length N = {spec.N}, got shape {psi0.shape}")
    if not np.isfinite(tau):
        raise InvalidInputError("tau must be finite")
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidInputError(f"state norm is {norm!r}, expected 1 within {NORM_TOL}")
    if spec.alpha == 0.0 and spec.beta == 0.0:
        raise InvalidInputError("(alpha, beta) = (0, 0) has no dynamics to evolve")
    h = build_hamiltonian(spec).to_dense()
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * tau * w) * (v.T @ psi0))

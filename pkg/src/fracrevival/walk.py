"""Continuous-time quantum walk on the hypercube with face diagonals.

The Hamiltonian is H = (alpha/2) A_2 + (beta/2) A_1 on {0,1}^M: hypercube
edges carry weight beta/2 and face diagonals weight alpha/2.  Both operators
are diagonalized by the +-1 character vectors of (Z_2)^M, so evolution is
exact and analytic: Walsh-Hadamard transform, multiply by the per-weight
eigenphases exp(-i tau E_s), transform back.  Cost O(M 2^M) with bit-exact
deterministic output; a dense eigendecomposition path exists purely as a
test oracle for small M.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kraw, scheme
from .errors import InvalidInputError, ResourceLimitError

NORM_TOL = 1e-12

# ~1 GiB of complex amplitudes; override with REVIVAL_MAX_M at your own risk.
DEFAULT_MAX_M = 26
ORACLE_MAX_M = 10


def max_bits() -> int:
    raw = os.environ.get("REVIVAL_MAX_M")
    if raw is None:
        return DEFAULT_MAX_M
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"REVIVAL_MAX_M must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class WalkSpec:
    """Graph model parameters: M = N-1 bits, diagonal weight alpha/2, edge weight beta/2."""

    M: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.M < 1:
            raise InvalidInputError(f"M must be at least 1, got {self.M}")
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise InvalidInputError("alpha and beta must be finite")

    @property
    def size(self) -> int:
        return 1 << self.M


def basis_state(M: int, vertex: int) -> np.ndarray:
    """Unit amplitude vector localized on one vertex of {0,1}^M."""
    size = 1 << M
    if not 0 <= vertex < size:
        raise InvalidInputError(f"vertex must lie in [0, 2^{M}), got {vertex}")
    psi = np.zeros(size, dtype=complex)
    psi[vertex] = 1.0
    return psi


def corner_state(M: int) -> np.ndarray:
    """The walk's canonical start: everything at the all-zeros corner."""
    return basis_state(M, 0)


def _require_unit_norm(psi: np.ndarray) -> None:
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidInputError(f"state norm is {norm!r}, expected 1 within {NORM_TOL}")


def fwht(psi: np.ndarray) -> np.ndarray:
    """Normalized Walsh-Hadamard transform (unitary, involutive).

    Component z of the output is 2^(-M/2) * sum_x (-1)^(x.z) psi(x).  The
    butterfly stages run in a fixed order over vectorized slices, so the
    floating-point result is deterministic.
    """
    psi = np.asarray(psi)
    n = psi.shape[0] if psi.ndim == 1 else 0
    if psi.ndim != 1 or n < 1 or (n & (n - 1)) != 0:
        raise InvalidInputError("input length must be a power of two")
    out = psi.astype(complex, copy=True)
    h = 1
    while h < n:
        out = out.reshape(-1, 2, h)
        top = out[:, 0, :] + out[:, 1, :]
        bottom = out[:, 0, :] - out[:, 1, :]
        out[:, 0, :] = top
        out[:, 1, :] = bottom
        out = out.reshape(n)
        h *= 2
    out *= 1.0 / np.sqrt(n)
    return out


def phase_table(spec: WalkSpec, tau: float) -> np.ndarray:
    """exp(-i tau E_s) for s = 0..M, with E_s the analytic eigenvalue on E(s)."""
    return np.exp(-1j * tau * kraw.graph_eigenvalues(spec))


def evolve_graph(spec: WalkSpec, psi0: np.ndarray, tau: float) -> np.ndarray:
    """Evolve an amplitude vector: exp(-i tau H) psi0 via the character transform.

    The transform index z picks up the eigenphase of s = popcount(z); no
    numerical diagonalization is involved anywhere on this path.
    """
    limit = max_bits()
    if spec.M > limit:
        raise ResourceLimitError(
            f"M = {spec.M} exceeds the guard ({limit}); set REVIVAL_MAX_M to override"
        )
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (spec.size,):
        raise InvalidInputError(
            f"state must have length 2^{spec.M} = {spec.size}, got shape {psi0.shape}"
        )
    if not np.isfinite(tau):
        raise InvalidInputError("tau must be finite")
    _require_unit_norm(psi0)
    phases = phase_table(spec, tau)
    transformed = fwht(psi0)
    transformed *= phases[scheme.hamming_weights(spec.M)]
    return fwht(transformed)


def dense_hamiltonian(spec: WalkSpec) -> np.ndarray:
    """Materialize (alpha/2) A_2 + (beta/2) A_1 densely (oracle scale only)."""
    if spec.M > ORACLE_MAX_M:
        raise ResourceLimitError(f"dense oracle refused for M = {spec.M} > {ORACLE_MAX_M}")
    h = 0.5 * spec.beta * scheme.dense_adjacency(spec.M, 1).astype(float)
    if spec.M >= 2:
        h += 0.5 * spec.alpha * scheme.dense_adjacency(spec.M, 2).astype(float)
    return h


def dense_oracle_evolve(spec: WalkSpec, psi0: np.ndarray, tau: float) -> np.ndarray:
    """Independent verification path: numeric eigendecomposition of the dense H.

    Only used to cross-check evolve_graph and the antipodal matrix identity;
    never on the production path.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (spec.size,):
        raise InvalidInputError(
            f"state must have length 2^{spec.M} = {spec.size}, got shape {psi0.shape}"
        )
    h = dense_hamiltonian(spec)
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * tau * w) * (v.T @ psi0))


class AntipodalAmplitudes(NamedTuple):
    mu: complex      # amplitude left at the start corner
    nu: complex      # amplitude at the all-ones antipode
    leakage: float   # 1 - |mu|^2 - |nu|^2


def antipodal_amplitudes(spec: WalkSpec, tau: float) -> AntipodalAmplitudes:
    """Evolve the corner state and read off the two antipodal amplitudes."""
    psi = evolve_graph(spec, corner_state(spec.M), tau)
    mu = complex(psi[0])
    nu = complex(psi[-1])
    return AntipodalAmplitudes(mu=mu, nu=nu, leakage=1.0 - abs(mu) ** 2 - abs(nu) ** 2)


def _fwht_rows(rows: np.ndarray) -> np.ndarray:
    """Normalized Walsh-Hadamard transform of each row; mutates its argument."""
    b, n = rows.shape
    h = 1
    while h < n:
        rows = rows.reshape(b, -1, 2, h)
        top = rows[:, :, 0, :] + rows[:, :, 1, :]
        bottom = rows[:, :, 0, :] - rows[:, :, 1, :]
        rows[:, :, 0, :] = top
        rows[:, :, 1, :] = bottom
        rows = rows.reshape(b, n)
        h *= 2
    rows *= 1.0 / np.sqrt(n)
    return rows


def antipodal_scan(spec: WalkSpec, taus: np.ndarray, chunk: int = 512):
    """Corner-start antipodal amplitudes (mu, nu) at many times at once.

    Equivalent to calling antipodal_amplitudes per tau: the corner's transform
    is the uniform vector, so each time needs only one phase multiply and one
    transform, batched here in row blocks.
    """
    limit = max_bits()
    if spec.M > limit:
        raise ResourceLimitError(
            f"M = {spec.M} exceeds the guard ({limit}); set REVIVAL_MAX_M to override"
        )
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    energies = kraw.graph_eigenvalues(spec)
    weights = scheme.hamming_weights(spec.M).astype(np.int64)
    scale = 1.0 / np.sqrt(spec.size)
    mus = np.empty(len(taus), dtype=complex)
    nus = np.empty(len(taus), dtype=complex)
    for start in range(0, len(taus), chunk):
        block = taus[start:start + chunk]
        rows = np.exp(-1j * np.outer(block, energies))[:, weights]
        rows *= scale
        rows = _fwht_rows(rows)
        mus[start:start + len(block)] = rows[:, 0]
        nus[start:start + len(block)] = rows[:, -1]
    return mus, nus


def remove_global_phase(psi: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude component is real and positive.

    States that differ by a global phase compare equal after this; ties on
    magnitude resolve to the lowest index.
    """
    psi = np.asarray(psi, dtype=complex)
    k = int(np.argmax(np.abs(psi)))
    mag = abs(psi[k])
    if mag == 0.0:
        return psi.copy()
    return psi * (psi[k].conjugate() / mag)

"""Qubit operator plumbing: Pauli matrices, tensor-product embedding, and
the column-stacking vectorization used throughout the package.

Sign convention: the basis vector |0> is the upper (excited) level, so that
the self-Hamiltonian sum(omega_i * sigma_z_i) written without a 1/2 factor
gives |0> the higher energy and the lowering operator is |1><0|.  With this
choice the standard initial states are superpositions of ground and excited
levels and the local x-expectations oscillate visibly.  Pass
``excited_level=1`` to the builders in :mod:`dsync.dynamics` to flip the
convention for sensitivity checks.
"""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|, excited -> ground
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

PAULI_BY_AXIS = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, SIGMA_MINUS, SIGMA_PLUS, IDENTITY_2):
    _m.setflags(write=False)


def ladder_operators(excited_level: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(sigma_minus, sigma_plus, sigma_z) for the chosen excited level.

    ``excited_level=0`` is the package default described in the module
    docstring; ``excited_level=1`` swaps the roles of the basis vectors.
    """
    if excited_level == 0:
        return SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z
    if excited_level == 1:
        return SIGMA_PLUS, SIGMA_MINUS, -SIGMA_Z
    raise ValueError(f"excited_level must be 0 or 1, got {excited_level}")


def site_operator(op: np.ndarray, site: int, n_atoms: int) -> np.ndarray:
    """Embed a single-qubit operator at ``site`` (0-based, leftmost factor
    first) in the n-atom tensor-product space."""
    if not 0 <= site < n_atoms:
        raise ValueError(f"site {site} out of range for {n_atoms} atoms")
    out = np.array([[1.0 + 0.0j]])
    for k in range(n_atoms):
        out = np.kron(out, op if k == site else IDENTITY_2)
    return out


def pauli_site(axis: str, site: int, n_atoms: int) -> np.ndarray:
    """Pauli operator along ``axis`` in {'x','y','z'} acting on one site."""
    try:
        op = PAULI_BY_AXIS[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None
    return site_operator(op, site, n_atoms)


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization: vec(rho)[i + d*j] = rho[i, j]."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((dim, dim), order="F")


def unvec_batch(columns: np.ndarray, dim: int) -> np.ndarray:
    """Unvectorize a (n, d^2) array of stacked vec(rho) rows to (n, d, d)."""
    # Row-major reshape of a column-stacked vector yields the transpose.
    return columns.reshape(-1, dim, dim).swapaxes(1, 2)

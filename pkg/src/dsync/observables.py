"""Local and global quantities extracted from density matrices: reduced
states, Pauli expectation values, purity, and l1-norm coherence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import PAULI_BY_AXIS


def _infer_n_atoms(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.ndim != 2 or rho.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"expected a square 2^N x 2^N matrix, got shape {rho.shape}")
    return n


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix on the atoms in ``keep`` (0-based indices).

    Remaining tensor factors are traced out; the result's factors are
    ordered by ascending kept index.  Trace is preserved.
    """
    rho = np.asarray(rho)
    n = _infer_n_atoms(rho)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep set {keep} out of range for {n} atoms")
    tensor = rho.reshape((2,) * (2 * n))
    dropped = [k for k in range(n) if k not in keep]
    n_left = n
    for k in reversed(dropped):  # trace highest axis first so indices stay valid
        tensor = np.trace(tensor, axis1=k, axis2=k + n_left)
        n_left -= 1
    d = 2 ** len(keep)
    return tensor.reshape((d, d))


def pauli_expectation(rho: np.ndarray, atom: int, axis: str) -> float:
    """<sigma_axis> of one atom, computed by reducing to that atom first."""
    try:
        op = PAULI_BY_AXIS[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None
    reduced = partial_trace(rho, [atom])
    return float(np.trace(reduced @ op).real)


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of the absolute values of the off-diagonal entries of rho, in the
    computational basis the matrix is given in."""
    rho = np.asarray(rho)
    mags = np.abs(rho)
    return float(mags.sum() - np.trace(mags))


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2)."""
    rho = np.asarray(rho)
    return float(np.trace(rho @ rho).real)


@dataclass(frozen=True)
class ObservableSeries:
    """One atom's expectation values of a Pauli operator on a time grid."""

    atom: int
    axis: str
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if np.max(np.abs(values), initial=0.0) > 1.0 + 1e-9:
            raise ValueError("Pauli expectation values must lie within [-1, 1]")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

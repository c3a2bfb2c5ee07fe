"""Physical model specification.

Collects everything needed to define a cluster of 1 to 4 two-level atoms
coupled to a common thermal photon environment: transition frequencies,
pure initial states, the mean photon number of the bath, and the
environment-mediated coupling coefficients.  Couplings can be supplied
directly as matrices (the mode used for parameter scans) or derived from
atom positions and a shared dipole orientation.

Conventions: hbar = 1, c = 1, and frequencies are quoted in units of the
first atom's transition frequency.  Distances are quoted in units of the
inverse reference wavenumber 1/k0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateGeometryError, InvalidModelError, NearFieldDivergenceError

# Below this separation the closed-form collectivity expression loses ~7 digits
# to cancellation of the 1/xi^2 and 1/xi^3 terms, so a Taylor series is used.
COLLECTIVITY_SERIES_THRESHOLD = 1e-3

# The exchange strength grows like 1/xi^3; below this separation callers must
# set f directly instead of deriving it from geometry.
EXCHANGE_DIVERGENCE_THRESHOLD = 1e-6

# A symmetric rate matrix is accepted as positive semidefinite if its lowest
# eigenvalue is above this floor.
GAMMA_PSD_FLOOR = -1e-10

MAX_ATOMS = 4


@dataclass(frozen=True)
class AtomSpec:
    """One two-level atom.

    ``omega`` is the transition frequency in units of the reference
    frequency.  ``theta`` and ``phi`` are the Bloch angles of the pure
    initial state ``cos(theta)|0> + exp(i*phi)*sin(theta)|1>``, where
    ``|0>`` is the upper (excited) level under this package's sign
    convention (see :mod:`dsync.dynamics`).
    """

    omega: float = 1.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise InvalidModelError(f"atom frequency must be positive, got {self.omega}")
        if not (0.0 <= self.theta <= 2.0 * math.pi):
            raise InvalidModelError(f"theta must lie in [0, 2*pi], got {self.theta}")
        # Random-state sampling uses phi in [0, pi]; explicit states are allowed
        # any phase within one full turn either way (e.g. phi = -pi/3).
        if not (-2.0 * math.pi <= self.phi <= 2.0 * math.pi):
            raise InvalidModelError(f"phi must lie in [-2*pi, 2*pi], got {self.phi}")

    def state_vector(self) -> np.ndarray:
        """Amplitudes (c0, c1) of the pure initial state."""
        return np.array(
            [math.cos(self.theta), np.exp(1j * self.phi) * math.sin(self.theta)],
            dtype=complex,
        )


@dataclass(frozen=True)
class BathSpec:
    """Thermal environment, characterised by the mean photon number at the
    atomic transition frequency.  ``nbar = 0`` is a zero-temperature bath."""

    nbar: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.nbar) and self.nbar >= 0):
            raise InvalidModelError(f"mean photon number must be >= 0, got {self.nbar}")


@dataclass(frozen=True)
class Geometry:
    """Atom positions and the shared dipole orientation.

    Positions are in units of 1/k0.  All atoms carry the same polarized
    dipole moment, so a single unit vector fixes every pair angle.
    """

    positions: np.ndarray
    dipole_direction: np.ndarray
    k0: float = 1.0

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise InvalidModelError(f"positions must be an (N, 3) array, got shape {pos.shape}")
        d = np.asarray(self.dipole_direction, dtype=float)
        if d.shape != (3,):
            raise InvalidModelError("dipole_direction must be a 3-vector")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise InvalidModelError("dipole_direction must have unit norm (within 1e-12)")
        if not (math.isfinite(self.k0) and self.k0 > 0):
            raise InvalidModelError(f"k0 must be positive, got {self.k0}")
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                if np.linalg.norm(pos[i] - pos[j]) == 0.0:
                    raise DegenerateGeometryError(f"atoms {i} and {j} share the same position")
        pos.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "dipole_direction", d)

    @property
    def n_atoms(self) -> int:
        return self.positions.shape[0]


def pair_geometry(geometry: Geometry, i: int, j: int) -> tuple[float, float]:
    """Dimensionless separation xi = k0*|r_i - r_j| and the angle alpha
    between the separation vector and the dipole direction, for the
    (0-based) atom pair (i, j)."""
    if i == j:
        raise ValueError("pair_geometry needs two distinct atoms")
    rij = geometry.positions[i] - geometry.positions[j]
    r = float(np.linalg.norm(rij))
    if r == 0.0:
        raise DegenerateGeometryError(f"atoms {i} and {j} share the same position")
    cos_alpha = float(np.dot(rij, geometry.dipole_direction)) / r
    alpha = math.acos(min(1.0, max(-1.0, cos_alpha)))
    return geometry.k0 * r, alpha


def _collectivity_direct(xi: float, cos2a: float) -> float:
    p = math.cos(xi) / xi**2 - math.sin(xi) / xi**3
    q = math.sin(xi) / xi
    return 1.5 * ((1.0 - 3.0 * cos2a) * p + (1.0 - cos2a) * q)


def _collectivity_series(xi: float, cos2a: float) -> float:
    # Taylor expansions of cos(xi)/xi^2 - sin(xi)/xi^3 and sin(xi)/xi; the
    # xi^6 terms are < 1e-22 at the switch point.
    x2 = xi * xi
    p = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0
    q = 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return 1.5 * ((1.0 - 3.0 * cos2a) * p + (1.0 - cos2a) * q)


def collectivity_a(xi: float, alpha: float) -> float:
    """Collectivity parameter a(xi, alpha) of a pair of dipoles.

    a = (3/2) [ (1 - 3 cos^2 alpha)(cos xi / xi^2 - sin xi / xi^3)
                + (1 - cos^2 alpha) sin xi / xi ]

    Tends to 1 as xi -> 0 (fully collective dissipation) and to 0 as
    xi -> infinity (independent baths).  Total on xi >= 0: the apparent
    singularities at xi = 0 cancel, and a Taylor branch below
    ``COLLECTIVITY_SERIES_THRESHOLD`` avoids the cancellation error.
    """
    if not (math.isfinite(xi) and xi >= 0):
        raise ValueError(f"xi must be finite and >= 0, got {xi}")
    cos2a = math.cos(alpha) ** 2
    if xi < COLLECTIVITY_SERIES_THRESHOLD:
        return _collectivity_series(xi, cos2a)
    return _collectivity_direct(xi, cos2a)


def exchange_f(xi: float, alpha: float, gamma0: float) -> float:
    """Environment-mediated exchange strength f(xi, alpha) for decay scale gamma0.

    f = (3 gamma0 / 4) [ (1 - 3 cos^2 alpha)(sin xi / xi^2 + cos xi / xi^3)
                         - (1 - cos^2 alpha) cos xi / xi ]

    Diverges like 1/xi^3 as xi -> 0; separations below
    ``EXCHANGE_DIVERGENCE_THRESHOLD`` are rejected so the caller can set f
    directly instead.
    """
    if not (math.isfinite(xi) and xi > 0):
        raise ValueError(f"xi must be finite and > 0, got {xi}")
    if xi < EXCHANGE_DIVERGENCE_THRESHOLD:
        raise NearFieldDivergenceError(
            f"exchange strength diverges as xi -> 0 (got xi={xi:g}); "
            "set f directly for near-coincident atoms"
        )
    cos2a = math.cos(alpha) ** 2
    s = (1.0 - 3.0 * cos2a) * (math.sin(xi) / xi**2 + math.cos(xi) / xi**3)
    s -= (1.0 - cos2a) * math.cos(xi) / xi
    return 0.75 * gamma0 * s


def invert_collectivity(target: float, alpha: float, xi_max: float = 50.0) -> float:
    """Smallest separation xi > 0 at which a(xi, alpha) equals ``target``.

    Used to place atoms so a pair attains a prescribed collectivity, e.g.
    when laying out a collinear chain.  Requires target < 1 (the xi -> 0
    limit) and a sign change of a - target within (0, xi_max].
    """
    if not target < 1.0:
        raise ValueError("collectivity target must be < 1 for a finite separation")

    def gap(xi):
        return collectivity_a(xi, alpha) - target

    lo = COLLECTIVITY_SERIES_THRESHOLD
    if gap(lo) <= 0.0:
        raise ValueError(f"no separation below xi={lo:g} attains a={target}")
    hi = lo
    while gap(hi) > 0.0:
        hi *= 1.5
        if hi > xi_max:
            raise ValueError(f"a(xi, alpha={alpha:g}) never reaches {target} below xi={xi_max}")
    return float(brentq(gap, hi / 1.5, hi, xtol=1e-14))


def _as_symmetric_matrix(m, n: int, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (n, n):
        raise InvalidModelError(f"{name} matrix must be {n}x{n}, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidModelError(f"{name} matrix contains non-finite entries")
    if np.max(np.abs(arr - arr.T), initial=0.0) > 1e-12:
        raise InvalidModelError(f"{name} matrix must be symmetric")
    return (arr + arr.T) / 2.0


@dataclass(frozen=True)
class CouplingMatrices:
    """Pairwise coupling coefficients.

    ``a``     collectivity parameters, dimensionless, diagonal fixed to 1.
    ``f``     exchange strengths entering the Hamiltonian, diagonal 0.
    ``gamma`` dissipation rates gamma_ij = sqrt(gamma_i*gamma_j) * a_ij,
              where gamma_i = omega_i^3 * g.  Must be positive semidefinite
              for the dissipator to be a valid generator.
    """

    a: np.ndarray
    f: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        n = self.n_atoms
        a = _as_symmetric_matrix(self.a, n, "a")
        f = _as_symmetric_matrix(self.f, n, "f")
        gamma = _as_symmetric_matrix(self.gamma, n, "gamma")
        if np.max(np.abs(np.diag(a) - 1.0), initial=0.0) > 1e-12:
            raise InvalidModelError("collectivity matrix must have unit diagonal")
        np.fill_diagonal(a, 1.0)
        if np.max(np.abs(np.diag(f)), initial=0.0) > 1e-12:
            raise InvalidModelError("exchange matrix must have zero diagonal")
        np.fill_diagonal(f, 0.0)
        if np.max(np.abs(a)) > 1.0 + 1e-12:
            raise InvalidModelError(
                f"collectivity parameters must satisfy |a_ij| <= 1, got max {np.max(np.abs(a)):g}"
            )
        lowest = float(np.linalg.eigvalsh(gamma)[0]) if n else 0.0
        if lowest < GAMMA_PSD_FLOOR:
            raise InvalidModelError(
                f"rate matrix is not positive semidefinite (lowest eigenvalue {lowest:.3e}); "
                "the coefficient combination is unphysical"
            )
        for arr in (a, f, gamma):
            arr.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "gamma", gamma)

    @property
    def n_atoms(self) -> int:
        return np.asarray(self.a).shape[0]


def decay_rates(atoms: tuple[AtomSpec, ...] | list[AtomSpec], g: float) -> np.ndarray:
    """Single-atom decay rates gamma_i = omega_i^3 * g."""
    return np.array([atom.omega**3 * g for atom in atoms])


def couplings_from_matrices(a, f, atoms, g: float) -> CouplingMatrices:
    """Assemble CouplingMatrices from user-supplied a and f matrices.

    The a and f entries are used verbatim; only gamma is derived.  This is
    the mode that scans a_12 and f_12 directly.
    """
    n = len(atoms)
    a = _as_symmetric_matrix(a, n, "a")
    f = _as_symmetric_matrix(f, n, "f")
    rates = decay_rates(atoms, g)
    gamma = np.sqrt(np.outer(rates, rates)) * a
    return CouplingMatrices(a=a, f=f, gamma=gamma)


def build_couplings(geometry: Geometry, atoms, g: float) -> CouplingMatrices:
    """Derive all coupling matrices from atomic geometry.

    For every pair, xi and alpha come from :func:`pair_geometry`, the
    collectivity from :func:`collectivity_a` and the exchange strength from
    :func:`exchange_f` with gamma0 = omega_1^3 * g (first atom as the
    reference, the choice matrix mode sidesteps).
    """
    n = len(atoms)
    if geometry.n_atoms != n:
        raise InvalidModelError(
            f"geometry has {geometry.n_atoms} positions for {n} atoms"
        )
    gamma0 = atoms[0].omega**3 * g
    a = np.eye(n)
    f = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            xi, alpha = pair_geometry(geometry, i, j)
            a[i, j] = a[j, i] = collectivity_a(xi, alpha)
            f[i, j] = f[j, i] = exchange_f(xi, alpha, gamma0)
    rates = decay_rates(atoms, g)
    gamma = np.sqrt(np.outer(rates, rates)) * a
    return CouplingMatrices(a=a, f=f, gamma=gamma)


@dataclass(frozen=True)
class ModelSpec:
    """Validated, immutable description of one simulation model."""

    atoms: tuple[AtomSpec, ...]
    couplings: CouplingMatrices
    bath: BathSpec
    g: float = 0.05

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        n = len(atoms)
        if not 1 <= n <= MAX_ATOMS:
            raise InvalidModelError(f"supported system sizes are 1..{MAX_ATOMS} atoms, got {n}")
        if self.couplings.n_atoms != n:
            raise InvalidModelError(
                f"coupling matrices are {self.couplings.n_atoms}x{self.couplings.n_atoms} "
                f"but there are {n} atoms"
            )
        if not (math.isfinite(self.g) and self.g > 0):
            raise InvalidModelError(f"dipole constant g must be positive, got {self.g}")

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def dim(self) -> int:
        return 2 ** self.n_atoms

    @property
    def omegas(self) -> np.ndarray:
        return np.array([atom.omega for atom in self.atoms])

    def initial_state_vector(self) -> np.ndarray:
        """Product initial state, atom 0 as the leftmost tensor factor."""
        psi = np.array([1.0 + 0.0j])
        for atom in self.atoms:
            psi = np.kron(psi, atom.state_vector())
        return psi


def make_model(atoms, bath, couplings_or_geometry, g: float = 0.05) -> ModelSpec:
    """Validate and assemble a ModelSpec.

    ``couplings_or_geometry`` may be a :class:`CouplingMatrices`, a
    :class:`Geometry` (couplings derived from positions), or an ``(a, f)``
    matrix pair (used verbatim, the default mode for parameter scans).
    """
    atoms = tuple(atoms)
    if isinstance(couplings_or_geometry, CouplingMatrices):
        couplings = couplings_or_geometry
        expected = np.sqrt(np.outer(decay_rates(atoms, g), decay_rates(atoms, g))) * couplings.a
        if np.max(np.abs(couplings.gamma - expected), initial=0.0) > 1e-12:
            raise InvalidModelError("gamma matrix is inconsistent with sqrt(gamma_i*gamma_j)*a_ij")
    elif isinstance(couplings_or_geometry, Geometry):
        couplings = build_couplings(couplings_or_geometry, atoms, g)
    else:
        try:
            a, f = couplings_or_geometry
        except (TypeError, ValueError):
            raise InvalidModelError(
                "couplings must be CouplingMatrices, Geometry, or an (a, f) matrix pair"
            ) from None
        couplings = couplings_from_matrices(a, f, atoms, g)
    return ModelSpec(atoms=atoms, couplings=couplings, bath=bath, g=g)

"""Exception types shared across the package."""


class DsyncError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModelError(DsyncError):
    """Model parameters violate a physical validity constraint."""


class DegenerateGeometryError(InvalidModelError):
    """Two atoms share the same position, so pair quantities are undefined."""


class NearFieldDivergenceError(DsyncError):
    """Exchange strength requested at a separation where it diverges."""


class IntegrationFailureError(DsyncError):
    """Propagation produced a state violating density-matrix invariants."""


class ZeroVarianceError(DsyncError):
    """Pearson coefficient requested for a constant sequence."""


class ConfigError(DsyncError):
    """Run configuration is malformed or fails semantic validation."""

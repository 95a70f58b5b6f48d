"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration (geometry, material, or CLI config file)."""


class SymmetryError(ValueError):
    """Spectral field violates Hermitian symmetry beyond tolerance."""


class DivergenceError(RuntimeError):
    """Non-finite field values appeared while time stepping."""

    def __init__(self, message, step=None, phase=None):
        super().__init__(message)
        self.step = step
        self.phase = phase


class InstabilityError(RuntimeError):
    """Marching solution blew up (expected for very large step sizes)."""

    def __init__(self, message, gamma=None):
        super().__init__(message)
        self.gamma = gamma


class NumericsError(ArithmeticError):
    """A numerical routine detected divergence or loss of meaning."""

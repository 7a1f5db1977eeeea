"""Hot-loop kernels: compiled extension when available, numpy fallback otherwise."""

try:
    from ._hermite_cy import psi_scaled_grid

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._hermite_py import psi_scaled_grid

    BACKEND = "python"

__all__ = ["psi_scaled_grid", "BACKEND"]

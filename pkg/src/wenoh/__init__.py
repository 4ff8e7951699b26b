"""WENO-H: fifth-order WENO finite differences with exponential-polynomial optimal weights."""

from wenoh.grid import BoundaryConditions, UniformGrid, build_grid, fill_ghosts
from wenoh.kernels import BACKEND
from wenoh.physics import Advection, Euler1D, Euler2D, SpatialOperator, spatial_operator
from wenoh.weights import Scheme, WeightParams

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Advection",
    "BoundaryConditions",
    "Euler1D",
    "Euler2D",
    "Scheme",
    "SpatialOperator",
    "UniformGrid",
    "WeightParams",
    "build_grid",
    "fill_ghosts",
    "spatial_operator",
]

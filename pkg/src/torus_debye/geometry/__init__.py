"""
Geometry of tori of revolution: generating curves, grids and cycles.
"""

from torus_debye.geometry.curve import (
    CurveSample,
    GeneratingCurve,
    GeometryError,
    GeometryFile,
    load_geometry,
    reference_torus,
)
from torus_debye.geometry.cycles import HomologyCycles, SpanningDisk, build_cycles
from torus_debye.geometry.grid import SurfaceGrid, build_surface_grid

__all__ = [
    "CurveSample",
    "GeneratingCurve",
    "GeometryError",
    "GeometryFile",
    "HomologyCycles",
    "SpanningDisk",
    "SurfaceGrid",
    "build_cycles",
    "build_surface_grid",
    "load_geometry",
    "reference_torus",
]

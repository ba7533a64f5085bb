"""
torus-debye

A boundary integral solver for time-harmonic Maxwell scattering from tori of
revolution. Fields are represented through generalized Debye sources, which
keeps the dielectric and perfect-conductor systems well conditioned from
moderate frequencies down to the static limit.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("torus-debye")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = [
    "__version__",
]

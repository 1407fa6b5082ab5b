"""Exact Borel homology, Borel cohomology and Tate cohomology of connective
K-theory for elementary abelian p-groups."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]

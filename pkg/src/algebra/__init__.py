from .liealg import LieAlgebra, Subspace

__all__ = ["LieAlgebra", "Subspace"]

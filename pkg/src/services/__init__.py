from .repbuilder import Decomposition, Representation, assemble_full, build_quotient_rep

__all__ = ["Decomposition", "Representation", "assemble_full", "build_quotient_rep"]

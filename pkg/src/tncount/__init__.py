"""Tensor-network weighted model counting.

Reduces CNF formulas to tensor networks, plans contraction orders from tree
and carving decompositions, and contracts the network with a dense engine.
"""

__version__ = "1.0.0"
__author__ = "tncount developers"

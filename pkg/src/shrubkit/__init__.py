"""Bounded-height tree models, Gyárfás decompositions, cosplits and sparsification.

The cosplit constructor lives in :mod:`shrubkit.cosplit` (same name as the module).
"""

from .cosplit import Cosplit, PreconditionError, TwoCosplit, two_cosplit, two_cosplit_bipartite
from .graph import BipartiteGraph, Graph
from .gyarfas import GyarfasDecomposition
from .patterns import CapExceeded
from .sparsify import ColoredGraph, EncodingError, decode, encode, sparsify_pipeline
from .treemodel import TreeModel

__all__ = [
    "BipartiteGraph", "CapExceeded", "ColoredGraph", "Cosplit", "EncodingError", "Graph",
    "GyarfasDecomposition", "PreconditionError", "TreeModel", "TwoCosplit", "decode",
    "encode", "sparsify_pipeline", "two_cosplit", "two_cosplit_bipartite",
]

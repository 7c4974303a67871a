from typing import List, Sequence
import networkx as nx
import numpy as np
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import DimensionMismatchError
from ..operators import Operator, as_operator


def coupling_graph(generators: Sequence[Operator], dim: int = None, tol: float = None) -> nx.Graph:
    """Levels as nodes (1-based), an edge wherever some generator connects two levels."""
    tol = tol or TOLERANCES['connectivity']
    operators = [as_operator(g) for g in generators]
    if dim is None:
        if not operators:
            raise ValueError("Need a dimension when no generators are given")
        dim = operators[0].shape[0]

    graph = nx.Graph()
    graph.add_nodes_from(range(1, dim + 1))
    for op in operators:
        if op.shape != (dim, dim):
            raise DimensionMismatchError(f"Generator has shape {op.shape}, expected ({dim}, {dim})")
        rows, cols = np.nonzero(np.abs(op) > tol)
        graph.add_edges_from((j + 1, k + 1) for j, k in zip(rows, cols) if j != k)
    return graph


def connectivity_blocks(generators: Sequence[Operator], dim: int = None, tol: float = None) -> List[List[int]]:
    graph = coupling_graph(generators, dim, tol)
    blocks = [sorted(int(n) for n in component) for component in nx.connected_components(graph)]
    return sorted(blocks, key=lambda block: block[0])

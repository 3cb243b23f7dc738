"""Long-unichord-free graphs: recognition, decomposition, bounded coloring."""

from .graphs import Graph, components, emit_graph, induced_subgraph, load_graph, named_graph

__all__ = [
    "Graph",
    "components",
    "emit_graph",
    "induced_subgraph",
    "load_graph",
    "named_graph",
]

__version__ = "0.1.0"

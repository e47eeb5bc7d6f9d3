"""Exact point-to-point shortest-path oracle via landmark vicinities.

The heavy lifting lives in the compiled ``_vicinity`` extension; this
package re-exports its surface.
"""

from ._vicinity import (
    Graph,
    Oracle,
    GraphParseError,
    GraphValidationError,
    GraphIoError,
    IndexFormatError,
    NodeRangeError,
    barabasi_albert,
    bfs_distance,
    bidirectional_bfs,
    build_oracle,
    dijkstra_distance,
    erdos_renyi,
    graph_from_edges,
    largest_component,
    load_graph,
    load_oracle,
)

__all__ = [
    "Graph",
    "Oracle",
    "GraphParseError",
    "GraphValidationError",
    "GraphIoError",
    "IndexFormatError",
    "NodeRangeError",
    "barabasi_albert",
    "bfs_distance",
    "bidirectional_bfs",
    "build_oracle",
    "dijkstra_distance",
    "erdos_renyi",
    "graph_from_edges",
    "largest_component",
    "load_graph",
    "load_oracle",
]

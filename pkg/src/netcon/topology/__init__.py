"""Active graphs, recognizers, initial topologies and family graphs."""

from netcon.topology.family import (
    BASE_GRAPHS,
    FamilyGraph,
    build_family_graph,
    edge_on_cycle,
    named_family_graph,
)
from netcon.topology.generators import (
    FAMILIES,
    enumerate_connected_graphs,
    enumerate_directed_connected_graphs,
    format_edge_list,
    generate_edges,
    generate_initial,
    get_family,
    initial_states,
    parse_edge_list,
    read_edge_list,
    register_family,
    write_edge_list,
)
from netcon.topology.graphs import (
    ActiveGraph,
    count_components,
    has_directed_2cycle,
    is_acyclic,
    is_connected,
    is_spanning_line,
    is_spanning_star,
    on_active_cycle,
    topology_class,
)

__all__ = [
    # Views and recognizers
    "ActiveGraph",
    "is_connected",
    "count_components",
    "is_acyclic",
    "is_spanning_line",
    "is_spanning_star",
    "has_directed_2cycle",
    "on_active_cycle",
    "topology_class",
    # Initial topologies
    "FAMILIES",
    "get_family",
    "register_family",
    "generate_edges",
    "generate_initial",
    "initial_states",
    # Edge lists and enumeration
    "parse_edge_list",
    "format_edge_list",
    "read_edge_list",
    "write_edge_list",
    "enumerate_connected_graphs",
    "enumerate_directed_connected_graphs",
    # Family graphs
    "BASE_GRAPHS",
    "FamilyGraph",
    "build_family_graph",
    "edge_on_cycle",
    "named_family_graph",
]

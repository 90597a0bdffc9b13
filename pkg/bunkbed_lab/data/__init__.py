from bunkbed_lab.data import graph_families, graph_files, random_graphs

__all__ = [
    graph_families,
    graph_files,
    random_graphs,
]

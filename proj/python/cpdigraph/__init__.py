"""Conditionally Poissonian random multidigraphs."""

import json

from ._core import (
    MultiDigraph,
    __version__,
    critical_cluster_exponent,
    poisson_tv,
    sample,
    weights,
)
from . import _core

__all__ = [
    "MultiDigraph",
    "__version__",
    "components",
    "critical_cluster_exponent",
    "edge_list",
    "poisson_tv",
    "sample",
    "survival",
    "weights",
]


def components(graph, top_k=10):
    """Largest weak and strong component sizes and counts, as a dict."""
    return json.loads(_core._components_json(graph, top_k))


def survival(model, configuration="mirrored-sum"):
    """Extinction probabilities and giant fractions for a weight model."""
    return json.loads(_core._survival_json(model, configuration))


def edge_list(graph, seed=0):
    """The graph in the CLI's TSV edge-list format (1-based ids)."""
    return _core._edge_list(graph, seed)

"""Link decay prediction toolkit (Python bindings)."""

from ._core import (
    Graph,
    LinkDecayError,
    TemporalEdgeList,
    __version__,
    average_precision,
    brute_force_g2,
    check_closed_form,
    complement_network_score,
    complement_score,
    evaluate,
    evaluate_link_prediction,
    fit_half_life,
    generate,
    link_prediction_score,
    materialize_complement,
    random_digraph,
)

__all__ = [
    "Graph",
    "LinkDecayError",
    "TemporalEdgeList",
    "__version__",
    "average_precision",
    "brute_force_g2",
    "check_closed_form",
    "complement_network_score",
    "complement_score",
    "evaluate",
    "evaluate_link_prediction",
    "fit_half_life",
    "generate",
    "link_prediction_score",
    "materialize_complement",
    "random_digraph",
]

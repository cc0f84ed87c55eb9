"""Subsystem-decomposed CV, GKP and hybrid cluster-state graphs."""

import json as _json

from ._hiddencluster import (
    SQRT_PI,
    ParseError,
    SubsystemGraph,
    UnsupportedMeasurement,
    UnsupportedTopology,
    build_cluster,
    chain,
    cluster_state,
    decompose_cz_multimode,
    decompose_cz_two_mode,
    decompose_position,
    expand_adjacency,
    from_json,
    gauge_position,
    grid,
    measure_p0,
    recompose,
    run_wire,
)
from ._hiddencluster import verify as _verify


def verify(n=3, modes=3, alpha=SQRT_PI, g_scale=1.0, seed=0):
    """Run the oracle checks; returns the parsed report."""
    return _json.loads(_verify(n, modes, alpha, g_scale, seed))


__all__ = [
    "SQRT_PI",
    "ParseError",
    "SubsystemGraph",
    "UnsupportedMeasurement",
    "UnsupportedTopology",
    "build_cluster",
    "chain",
    "cluster_state",
    "decompose_cz_multimode",
    "decompose_cz_two_mode",
    "decompose_position",
    "expand_adjacency",
    "from_json",
    "gauge_position",
    "grid",
    "measure_p0",
    "recompose",
    "run_wire",
    "verify",
]

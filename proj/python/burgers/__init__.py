"""Inventory-accumulation words: reducers, samplers, loop structure, and
Monte Carlo experiments, backed by the C++ core."""

import json as _json

try:
    from ._burgers import *  # noqa: F401,F403  (wheel layout)
    from ._burgers import Error, run_experiment_json  # noqa: F401
except ImportError:  # development layout: extension next to the package
    from _burgers import *  # noqa: F401,F403
    from _burgers import Error, run_experiment_json  # noqa: F401


def run_experiment(id, **kwargs):
    """Run a Monte Carlo experiment and return its report as a dict."""
    return _json.loads(run_experiment_json(id, **kwargs))

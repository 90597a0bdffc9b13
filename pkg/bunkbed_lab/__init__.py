from importlib.metadata import version
from bunkbed_lab import closedform, data, exceptions, graphcore, harness, maxflow, presistance, saw, utils


__all__ = [
    closedform,
    data,
    exceptions,
    graphcore,
    harness,
    maxflow,
    presistance,
    saw,
    utils,
]

__version__ = version("bunkbed-lab")

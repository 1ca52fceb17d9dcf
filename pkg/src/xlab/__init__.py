"""xlab: a workbench for codes on bipartite graphs.

Exact GF(2) construction and verification at desk scale, plus the full set
of asymptotic rate/distance curves for the random ensemble and the improved
constructive families.
"""

from . import bounds, ensemble, gf2, graph, localcode, tanner  # noqa: F401

__version__ = "0.1.0"

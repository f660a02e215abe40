"""Non-separating spanning structures in digraphs of independence number 2.

A digraph subgraph is non-separating if deleting its arcs leaves the host
strongly connected.  This package provides constructive algorithms that find
non-separating out-branchings and spanning trees in 2-arc-strong digraphs of
independence number at most 2, together with brute-force oracles, named
counterexample families, generators and a small CLI.
"""

from nonsep.digraph import ArcSubset, Digraph, UndirectedGraph
from nonsep.errors import (
    BoundExceeded,
    InvariantViolation,
    NotGuaranteed,
    PreconditionError,
    RootNotPermitted,
)

__all__ = [
    "ArcSubset",
    "Digraph",
    "UndirectedGraph",
    "BoundExceeded",
    "InvariantViolation",
    "NotGuaranteed",
    "PreconditionError",
    "RootNotPermitted",
]

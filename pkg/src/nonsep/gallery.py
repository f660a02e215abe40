"""Constructors for the named digraph families used throughout the test suite.

Every builder fixes an explicit vertex labelling so arc lists are reproducible:

* ``W1``, ``W2`` -- the two 4-vertex semicomplete obstructions to
  non-separating out-branchings.
* ``S4``, ``S4_1``, ``S4_2``, ``S4_3`` -- the 4-vertex semicomplete (multi)
  digraphs that have no pair of arc-disjoint strong spanning subdigraphs.
* ``DTILDE`` -- 6-vertex 2-arc-strong co-bipartite digraph with no
  non-separating spanning tree.
* ``DHAT`` -- 8-vertex 2-arc-strong circulant with no non-separating spanning
  tree.
* ``TR(r)`` -- 2-arc-strong tournaments in which every hamiltonian path
  starting at a fixed vertex is separating.
* ``DR(r)`` -- two linked copies of ``TR(r)``: every hamiltonian path is
  separating.
* ``NO2COL(T, x)`` -- four linked tournament blocks with no partition into two
  arc-disjoint strong spanning subdigraphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from nonsep.digraph import Digraph
from nonsep.errors import PreconditionError

GALLERY_NAMES = ("W1", "W2", "S4", "S4_1", "S4_2", "S4_3", "DTILDE", "DHAT", "TR", "DR", "NO2COL")


def build_w1() -> Digraph:
    """4-cycle 0-1-2-3 plus the 2-cycle {1,3} and the arc 0->2; in-degree(0)=1."""
    return Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (3, 1), (0, 2)])


def build_w2() -> Digraph:
    """Strong tournament on {0..3} whose two in-degree-one vertices admit no
    residual-strong out-tree on the other three vertices.

    Vertices: 0, 1 are the in-degree-one vertices; 2, 3 the others.
    """
    # 0 -> 3, 1 -> 2, 0 -> 2, 2 -> 3, 3 -> 1, 1 -> 0
    return Digraph(4, [(0, 3), (1, 2), (0, 2), (2, 3), (3, 1), (1, 0)])


def build_s4() -> Digraph:
    """4-cycle 0-1-2-3 plus 2-cycles on both diagonals."""
    return Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)])


def build_s4_1() -> Digraph:
    """S4 plus one extra arc parallel to a diagonal back-arc (2 -> 0)."""
    return Digraph(4, list(build_s4().arcs) + [(2, 0)])


def build_s4_2() -> Digraph:
    """S4 plus one extra arc parallel to a cycle arc (0 -> 1)."""
    return Digraph(4, list(build_s4().arcs) + [(0, 1)])


def build_s4_3() -> Digraph:
    """S4 plus extra arcs parallel to 2 -> 0 and 1 -> 3."""
    return Digraph(4, list(build_s4().arcs) + [(2, 0), (1, 3)])


def build_dtilde() -> Digraph:
    """Two directed triangles {0,1,2} and {3,4,5} woven by a 6-cycle.

    Labels: a,b,c,x,y,z -> 0,1,2,3,4,5.
    """
    a, b, c, x, y, z = range(6)
    return Digraph(
        6,
        [
            (a, b), (b, c), (c, a),
            (x, y), (y, z), (z, x),
            (a, y), (y, c), (c, x), (x, b), (b, z), (z, a),
        ],
    )


def build_dhat() -> Digraph:
    """Circulant on 8 vertices with jumps 1 and 6; all semi-degrees equal 2."""
    arcs = []
    for i in range(8):
        arcs.append((i, (i + 1) % 8))
    for i in range(8):
        arcs.append((i, (i + 6) % 8))
    return Digraph(8, arcs)


def tr_vertex_names(r: int) -> list[str]:
    return [f"u{i}" for i in range(r + 2)] + [f"v{i}" for i in range(r + 2)]


def build_tr(r: int) -> Digraph:
    """2-arc-strong tournament on 2r+4 vertices (vertices u0..u_{r+1}, v0..v_{r+1}).

    Indices: u_i -> i, v_i -> r+2+i.  All pairs not listed explicitly get an
    arc from the higher-subscript vertex to the lower-subscript one.
    """
    if r < 2:
        raise PreconditionError("TR requires r >= 2")
    u = list(range(r + 2))
    v = list(range(r + 2, 2 * r + 4))
    explicit: dict[frozenset, tuple[int, int]] = {}

    def put(t, h):
        key = frozenset((t, h))
        if key in explicit and explicit[key] != (t, h):
            raise AssertionError("conflicting explicit arcs")
        explicit[key] = (t, h)

    for i in range(1, r + 1):
        put(u[i - 1], u[i])
        put(v[i], v[i + 1])
        put(u[i], v[i])
    put(v[1], v[0])
    put(v[0], u[0])
    put(v[0], u[1])
    put(u[0], v[1])
    put(u[r + 1], u[r])
    put(v[r + 1], u[r + 1])
    put(u[r], v[r + 1])
    put(v[r], u[r + 1])

    def subscript(w: int) -> int:
        return w if w <= r + 1 else w - (r + 2)

    n = 2 * r + 4
    arcs = []
    for a in range(n):
        for b in range(a + 1, n):
            key = frozenset((a, b))
            if key in explicit:
                arcs.append(explicit[key])
            else:
                # unspecified pairs run from higher subscript to lower
                sa, sb = subscript(a), subscript(b)
                if sa == sb:
                    raise AssertionError("same-subscript pair must be explicit")
                arcs.append((a, b) if sa > sb else (b, a))
    return Digraph(n, arcs)


def build_dr(r: int) -> Digraph:
    """Two copies of TR(r); each copy sends two arcs to the other copy's v0.

    The two arcs out of copy i have the fixed tails u0 and v1 of copy i.
    """
    T = build_tr(r)
    n = T.n
    arcs = [(t, h) for t, h in T.arcs]
    arcs += [(t + n, h + n) for t, h in T.arcs]
    u0, v0, v1 = 0, r + 2, r + 3
    arcs += [(u0, v0 + n), (v1, v0 + n)]
    arcs += [(u0 + n, v0), (v1 + n, v0)]
    return Digraph(2 * n, arcs)


@dataclass(frozen=True)
class No2ColFamily:
    """Four blocks of a tournament T with marked vertex x, linked as follows:
    the 4-cycle x1->x3->x2->x4->x1, arcs x1->x2 and x3->x4, and full bundles
    T2->T1 and T4->T3.

    ``extra_block_arcs`` optionally adds more block-level arcs (pairs of block
    ids in 0..3) for relaxed variants.
    """

    tournament: Digraph
    x: int
    extra_block_arcs: tuple = field(default=())

    # block-level arcs available to both colour classes
    BUNDLES = ((1, 0), (3, 2))
    # the six single arcs that must be split between the colours
    SPECIAL = ((3, 0), (2, 1), (0, 1), (0, 2), (2, 3), (1, 3))

    def block_count(self) -> int:
        return 4

    def full_digraph(self) -> Digraph:
        T = self.tournament
        k = T.n
        arcs = []
        for b in range(4):
            arcs += [(t + b * k, h + b * k) for t, h in T.arcs]
        x = [self.x + b * k for b in range(4)]
        for bi, bj in self.SPECIAL:
            arcs.append((x[bi], x[bj]))
        for bi, bj in self.BUNDLES + tuple(self.extra_block_arcs):
            if (bi, bj) in self.BUNDLES:
                arcs += [(a + bi * k, b + bj * k) for a in range(k) for b in range(k)]
            else:
                arcs.append((x[bi], x[bj]))
        return Digraph(4 * k, arcs)


def rotational_tournament(n: int) -> Digraph:
    """Tournament on odd n with arcs i -> i+1, ..., i -> i+(n-1)/2 (mod n)."""
    if n % 2 == 0:
        raise PreconditionError("rotational tournament needs odd n")
    arcs = []
    for i in range(n):
        for j in range(1, (n - 1) // 2 + 1):
            arcs.append((i, (i + j) % n))
    return Digraph(n, arcs)


def build(name: str, r: Optional[int] = None, tournament: Optional[Digraph] = None,
          x: int = 0) -> Digraph:
    """Build a gallery digraph by name.  TR/DR need r; NO2COL accepts a
    tournament (default: rotational 5-tournament) and a marked vertex."""
    name = name.upper()
    simple = {
        "W1": build_w1,
        "W2": build_w2,
        "S4": build_s4,
        "S4_1": build_s4_1,
        "S4_2": build_s4_2,
        "S4_3": build_s4_3,
        "DTILDE": build_dtilde,
        "DHAT": build_dhat,
    }
    if name in simple:
        return simple[name]()
    if name == "TR":
        if r is None:
            raise PreconditionError("TR requires r")
        return build_tr(r)
    if name == "DR":
        if r is None:
            raise PreconditionError("DR requires r")
        return build_dr(r)
    if name == "NO2COL":
        fam = no2col_family(tournament=tournament, x=x)
        return fam.full_digraph()
    raise PreconditionError(f"unknown gallery name {name!r}")


def no2col_family(tournament: Optional[Digraph] = None, x: int = 0,
                  extra_block_arcs: tuple = ()) -> No2ColFamily:
    from nonsep.connectivity import is_k_arc_strong
    from nonsep.digraph import is_tournament

    T = tournament if tournament is not None else rotational_tournament(5)
    if not is_tournament(T):
        raise PreconditionError("NO2COL requires a tournament")
    if not is_k_arc_strong(T, 2):
        raise PreconditionError("NO2COL requires a 2-arc-strong tournament")
    if not (0 <= x < T.n):
        raise PreconditionError("marked vertex out of range")
    return No2ColFamily(T, x, tuple(extra_block_arcs))

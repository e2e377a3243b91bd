"""Reference diagrams used by tests, docs and the acceptance suite.

Torus links come from a braid-closure builder; the remaining knots use
their standard table PD codes.
"""

from __future__ import annotations

from .codec import parse_pd
from .core import UNKNOT, Diagram

__all__ = [
    "braid_closure",
    "torus_link",
    "trefoil",
    "figure_eight",
    "unknot",
    "torus24",
    "octahedral_link",
    "knot_fixtures",
    "link_fixtures",
]


def braid_closure(word: list[int], strands: int) -> Diagram:
    """Closure of a braid word; word entries are +-(1..strands-1).

    Crossing i of the word occupies columns (j, j+1) with j = |word[i]|.
    Vertex darts run NE, NW, SW, SE counterclockwise.  A positive
    generator takes the strand entering from the SW over the one from
    the SE.  Strands never touched by the word close into free loops.
    """
    if not word:
        return Diagram((), None, strands) if strands else UNKNOT
    m = len(word)
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"generator {g} out of range for {strands} strands")
    NE, NW, SW, SE = 0, 1, 2, 3
    # Column occupancy: scan word cyclically; column c is visited by
    # crossing i on its left when |w_i| == c, on its right when == c-1.
    alpha = [-1] * (4 * m)

    def link(a, b):
        alpha[a] = b
        alpha[b] = a

    used_cols = set()
    for c in range(1, strands + 1):
        hits = []  # (word index, dart going up this column, dart coming in from below)
        for i, g in enumerate(word):
            j = abs(g)
            if j == c:
                hits.append((i, 4 * i + NW, 4 * i + SW))
                used_cols.add(c)
            elif j + 1 == c:
                hits.append((i, 4 * i + NE, 4 * i + SE))
                used_cols.add(c)
        for k, (i, up, _dn) in enumerate(hits):
            i2, _up2, dn2 = hits[(k + 1) % len(hits)]
            link(up, dn2)
    free = strands - len(used_cols)
    bits = tuple(0 if g > 0 else 1 for g in word)
    return Diagram(tuple(alpha), bits, free)


def torus_link(p: int, q: int) -> Diagram:
    """Standard (p, q)-torus diagram: closure of (s1 s2 ... s_{p-1})^q."""
    if p < 2 or q < 1:
        raise ValueError("need p >= 2, q >= 1")
    word = [j for _ in range(q) for j in range(1, p)]
    return braid_closure(word, p)


def trefoil() -> Diagram:
    return torus_link(2, 3)


def figure_eight() -> Diagram:
    return parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")


def unknot() -> Diagram:
    return UNKNOT


def torus24() -> Diagram:
    return torus_link(2, 4)


def octahedral_link() -> Diagram:
    return torus_link(3, 3)


# Standard table PD codes (over/under per the tables; names cosmetic).
_PD_TABLE = {
    "3_1": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "4_1": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "5_1": "X[2,8,3,7] X[4,10,5,9] X[6,2,7,1] X[8,4,9,3] X[10,6,1,5]",
    "5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "6_1": "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
    "6_2": "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]",
    "6_3": "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]",
}


def knot_fixtures() -> dict[str, Diagram]:
    """The fixture knots: unknot, 3_1, 4_1, 5_1, 5_2, 6_1, 6_2, 6_3."""
    out = {"unknot": unknot()}
    for name, pd in _PD_TABLE.items():
        out[name] = parse_pd(pd)
    return out


def link_fixtures() -> dict[str, Diagram]:
    return {"torus24": torus24(), "octahedral": octahedral_link()}


def all_fixtures() -> dict[str, Diagram]:
    return {**knot_fixtures(), **link_fixtures()}

"""Design iteration for the spiral trivial-knot grid Q (v5:
through-center spiral, closure routed through the weave)."""

from knotfacet.wires import Wire, build_arrangement
from knotfacet.core import face_vector, faces, components, is_reduced


def q_points(m: int) -> list[tuple[int, int]]:
    """Spiral of m windings; winding k: horizontal pass y=-2k, vertical
    pass x=2k; closure dives back through the weave to the centre."""
    pts = []

    def go(x, y):
        pts.append((x, y))

    # inner dangler: first point (-1, 0)
    for k in range(m):
        Wk = -2 - 2 * k if k else -1
        Ek = 2 * m + 2 * k
        Sk = -2 * m - 2 - 2 * k
        Nk = 2 + 2 * k
        go(Wk, -2 * k)  # west end of horizontal pass
        go(Ek, -2 * k)  # east
        go(Ek, Sk)  # down the east wrap
        go(2 * k, Sk)  # west along the south wrap
        go(2 * k, Nk)  # up the vertical pass
        go(-2 - 2 * (k + 1), Nk)  # west along the north wrap
    # closure: descend west of everything to y=1, run east through all
    # west sides and vertical passes, drop through the grid east of the
    # passes, run west under the horizontal passes, climb to the inner
    # dangler at (-1, 0).
    go(-2 - 2 * m, 1)
    go(2 * m - 1, 1)
    go(2 * m - 1, -2 * m + 1)
    go(-1, -2 * m + 1)
    return pts


def main():
    for m in (2, 3, 4, 5, 6):
        try:
            w = Wire(q_points(m))
            arr = build_arrangement([w])
            d = arr.diagram
            fv = face_vector(d)
            print(
                f"m={m}: V={d.n_vertices} fv={fv} comps={components(d).count} "
                f"reduced={is_reduced(d)} corners={arr.corners_per_wire[0]}"
            )
            bad = [f for f in faces(d) if f.size not in (3, 4)]
            for f in bad:
                pos = [arr.vertex_pos[x // 4] for x in f.boundary]
                print("   ", f.size, pos[:9])
        except Exception as e:
            print(f"m={m}: {type(e).__name__}: {e}")


if __name__ == "__main__":
    main()

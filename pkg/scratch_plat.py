"""Design search: plat closures of 4-strand braids as spiral tangles."""

from itertools import product

from knotfacet.core import Diagram, face_vector, faces, components, is_reduced
from knotfacet.invariants import canonical_form


def plat_closure(word, strands=4):
    """Plat closure: caps joining (1,2),(3,4) at top and bottom.

    Built like braid_closure but column wirings terminate in cups/caps.
    """
    m = len(word)
    if m == 0:
        raise ValueError
    alpha = [-1] * (4 * m)

    def link(a, b):
        if alpha[a] != -1 or alpha[b] != -1:
            raise ValueError("conflict")
        alpha[a] = b
        alpha[b] = a

    NE, NW, SW, SE = 0, 1, 2, 3
    # per column: list of (index, updart, downdart) in word order
    cols = {c: [] for c in range(1, strands + 1)}
    for i, g in enumerate(word):
        j = abs(g)
        cols[j].append((i, 4 * i + NW, 4 * i + SW))
        cols[j + 1].append((i, 4 * i + NE, 4 * i + SE))
    # internal links: consecutive hits in one column
    tops = {}
    bottoms = {}
    for c in range(1, strands + 1):
        hits = cols[c]
        if not hits:
            tops[c] = None
            bottoms[c] = None
            continue
        for k in range(len(hits) - 1):
            link(hits[k][1], hits[k + 1][2])
        bottoms[c] = hits[0][2]  # dart waiting below
        tops[c] = hits[-1][1]  # dart waiting above
    # caps: (1,2), (3,4) top and bottom
    for a, b in ((1, 2), (3, 4)):
        if tops[a] is None or tops[b] is None:
            raise ValueError("empty column")
        link(tops[a], tops[b])
        link(bottoms[a], bottoms[b])
    return Diagram(tuple(alpha))


def main():
    targets = {
        "PB1": {2: 1, 3: 8, 4: 1, 6: 1},
        "PA1": {3: 8, 4: 2},
        "B9": {3: 9, 4: 1, 5: 1},
        "V10a": {3: 9, 4: 2, 5: 1},
        "V10b": {2: 1, 3: 8, 4: 2, 6: 1},
    }
    hits = {}
    seen = set()
    for L in (8, 9, 10):
        for word in product((1, 2, 3), repeat=L):
            try:
                d = plat_closure(list(word))
            except Exception:
                continue
            try:
                fv = dict(face_vector(d).items())
            except Exception:
                continue
            for name, t in targets.items():
                if fv != t:
                    continue
                if components(d).count != 1 or not is_reduced(d):
                    continue
                key = canonical_form(d)
                if key in seen:
                    continue
                seen.add(key)
                hits.setdefault(name, []).append(word)
    for name in targets:
        ws = hits.get(name, [])
        print(name, len(ws), ws[:4])


if __name__ == "__main__":
    main()

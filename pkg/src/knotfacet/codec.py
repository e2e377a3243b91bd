"""Bit-exact parsers and serializers for diagram interchange.

Formats:

* PD codes: ``X[a,b,c,d]`` entries separated by whitespace or commas.
  The tuple lists the four edge labels counterclockwise starting from
  the incoming understrand, so slot 0 and slot 2 carry the under
  strand.  Labels are 1-indexed and every label appears exactly twice.
* Signed Gauss codes: per component a sequence of ``O<k><sign>`` /
  ``U<k><sign>`` tokens, components separated by ``;``.  The sign is a
  crossing datum and must agree between the two passages.  The signed
  code pins the rotation at every crossing, so planarity is decided by
  the Euler count of the resulting map.
* JSON: the dense map itself (sigma is implicit in dart numbering,
  alpha explicit, crossing bits an array), plus the free-loop counter
  and an optional coloring payload.
"""

from __future__ import annotations

import json
import re
from typing import Iterable

from .core import Diagram, components, sigma
from .errors import (
    Disconnected,
    EdgeLabelArity,
    GaussSyntaxError,
    InconsistentSigns,
    NonPlanar,
    PdSyntaxError,
    SchemaError,
    SelfLoopEdge,
    UnrealizableGaussCode,
    ValidationError,
)

__all__ = [
    "parse_pd",
    "emit_pd",
    "parse_gauss",
    "emit_gauss",
    "to_json",
    "from_json",
    "JSON_FORMAT",
]

JSON_FORMAT = "knotfacet-diagram"
JSON_VERSION = 1


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    last_nl = text.rfind("\n", 0, pos)
    col = pos - last_nl
    return line, col


_PD_TOKEN = re.compile(r"\s*X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*,?")


def parse_pd(text: str) -> Diagram:
    """Parse a PD code into a validated Diagram (crossing bits included)."""
    pos = 0
    tuples: list[tuple[int, int, int, int]] = []
    stripped = text.strip()
    if not stripped:
        raise PdSyntaxError("empty PD input", *_line_col(text, 0))
    while pos < len(text):
        rest = text[pos:]
        if not rest.strip():
            break
        m = _PD_TOKEN.match(text, pos)
        if m is None:
            raise PdSyntaxError("expected X[a,b,c,d]", *_line_col(text, pos))
        tuples.append(tuple(int(g) for g in m.groups()))  # type: ignore[arg-type]
        pos = m.end()
    uses: dict[int, list[int]] = {}
    for v, tup in enumerate(tuples):
        for k, label in enumerate(tup):
            uses.setdefault(label, []).append(4 * v + k)
    for label, darts in sorted(uses.items()):
        if len(darts) != 2:
            raise EdgeLabelArity(f"edge label {label} used {len(darts)} times, expected 2")
    n = 4 * len(tuples)
    alpha = [0] * n
    for darts in uses.values():
        a, b = darts
        alpha[a] = b
        alpha[b] = a
    # Slot 0 is the incoming understrand, so the over pair is slots 1,3.
    return Diagram(tuple(alpha), crossing=(1,) * len(tuples))


def _strand_orientations(d: Diagram) -> list[int]:
    """One starting out-dart per strand: least dart, walked forward."""
    starts = []
    seen = [False] * d.n_darts
    for x in range(d.n_darts):
        if seen[x]:
            continue
        starts.append(x)
        y = x
        while not seen[y]:
            seen[y] = True
            seen[d.alpha[y]] = True
            a = d.alpha[y]
            y = 4 * (a // 4) + (a + 2) % 4
    return starts


def _traversal_edges(d: Diagram) -> list[list[int]]:
    """Per strand, the out-darts in traversal order from the least dart."""
    out = []
    for start in _strand_orientations(d):
        walk = [start]
        a = d.alpha[start]
        y = 4 * (a // 4) + (a + 2) % 4
        while y != start:
            walk.append(y)
            a = d.alpha[y]
            y = 4 * (a // 4) + (a + 2) % 4
        out.append(walk)
    return out


def emit_pd(d: Diagram) -> str:
    """Serialize to a PD code; strand traversal numbers the edges."""
    if d.crossing is None:
        raise ValidationError("PD codes need over/under data; emit of a projection")
    if d.n_vertices == 0:
        raise ValidationError("PD codes cannot express crossing-free loops")
    if d.free_loops:
        raise ValidationError("PD codes cannot express extra free loops")
    label_of_dart: dict[int, int] = {}
    label = 0
    for walk in _traversal_edges(d):
        for x in walk:
            label += 1
            label_of_dart[x] = label
            label_of_dart[d.alpha[x]] = label
    incoming = set()
    for walk in _traversal_edges(d):
        for x in walk:
            incoming.add(d.alpha[x])
    entries = []
    for v in range(d.n_vertices):
        under = [4 * v + k for k in range(4) if k % 2 != d.crossing[v]]
        under_in = [x for x in under if x in incoming]
        start = under_in[0]
        tup = [label_of_dart[start]]
        x = start
        for _ in range(3):
            x = sigma(x)
            tup.append(label_of_dart[x])
        entries.append("X[%d,%d,%d,%d]" % tuple(tup))
    return " ".join(entries)


_GAUSS_TOKEN = re.compile(r"\s*([OU])\s*(\d+)\s*([+-])\s*")


def parse_gauss(text: str) -> Diagram:
    """Parse a signed Gauss code; rejects codes with no plane realization.

    The sign convention: at a positive crossing the rotation reads
    (under-in, over-in, under-out, over-out) counterclockwise; at a
    negative one (under-in, over-out, under-out, over-in).
    """
    comps_txt = text.split(";")
    comps: list[list[tuple[str, int, int]]] = []
    offset = 0
    for part in comps_txt:
        pos = 0
        tokens: list[tuple[str, int, int]] = []
        while pos < len(part):
            if not part[pos:].strip():
                break
            m = _GAUSS_TOKEN.match(part, pos)
            if m is None:
                raise GaussSyntaxError("expected O<k><sign> or U<k><sign>", *_line_col(text, offset + pos))
            flag, num, sgn = m.group(1), int(m.group(2)), 1 if m.group(3) == "+" else -1
            tokens.append((flag, num, sgn))
            pos = m.end()
        if tokens:
            comps.append(tokens)
        offset += len(part) + 1
    if not comps:
        raise GaussSyntaxError("empty Gauss input", 1, 1)

    flags: dict[int, dict[str, int]] = {}
    signs: dict[int, set[int]] = {}
    order: list[int] = []
    for tokens in comps:
        for flag, num, sgn in tokens:
            if num not in flags:
                flags[num] = {}
                signs[num] = set()
                order.append(num)
            if flag in flags[num]:
                raise GaussSyntaxError(f"crossing {num} passed twice as {flag}")
            flags[num][flag] = 1
            signs[num].add(sgn)
    for num in order:
        if set(flags[num]) != {"O", "U"}:
            raise GaussSyntaxError(f"crossing {num} needs one O and one U passage")
        if len(signs[num]) != 1:
            raise InconsistentSigns(f"crossing {num} carries both signs")

    vertex_of = {num: i for i, num in enumerate(order)}
    n = 4 * len(order)
    # Local slots: under-in 0, under-out 2; over-in 1 (positive) or 3.
    alpha = [-1] * n

    def in_dart(num: int, flag: str) -> int:
        v = vertex_of[num]
        s = next(iter(signs[num]))
        if flag == "U":
            return 4 * v + 0
        return 4 * v + (1 if s > 0 else 3)

    def out_dart(num: int, flag: str) -> int:
        v = vertex_of[num]
        s = next(iter(signs[num]))
        if flag == "U":
            return 4 * v + 2
        return 4 * v + (3 if s > 0 else 1)

    for tokens in comps:
        m = len(tokens)
        for i, (flag, num, _s) in enumerate(tokens):
            nflag, nnum, _ns = tokens[(i + 1) % m]
            a = out_dart(num, flag)
            b = in_dart(nnum, nflag)
            if alpha[a] != -1 or alpha[b] != -1:
                raise GaussSyntaxError("self-abutting passage sequence")
            alpha[a] = b
            alpha[b] = a
    try:
        return Diagram(tuple(alpha), crossing=(1,) * len(order))
    except (NonPlanar, Disconnected) as exc:
        raise UnrealizableGaussCode(f"no plane realization: {exc}") from exc
    except SelfLoopEdge as exc:
        raise UnrealizableGaussCode(
            f"code forces a reducible kink, outside the loop-free data model: {exc}"
        ) from exc


def emit_gauss(d: Diagram) -> str:
    """Serialize to a signed Gauss code, one part per component."""
    if d.crossing is None:
        raise ValidationError("Gauss codes need over/under data; emit of a projection")
    if d.n_vertices == 0 or d.free_loops:
        raise ValidationError("Gauss codes cannot express crossing-free loops")
    walks = _traversal_edges(d)
    outgoing = {x for walk in walks for x in walk}
    parts = []
    number: dict[int, int] = {}
    for walk in walks:
        tokens = []
        for x in walk:
            v = x // 4
            if v not in number:
                number[v] = len(number) + 1
            flag = "O" if d.is_over(x) else "U"
            sgn = "+" if _sign_at(d, v, outgoing) > 0 else "-"
            tokens.append(f"{flag}{number[v]}{sgn}")
        parts.append("".join(tokens))
    return ";".join(parts)


def _sign_at(d: Diagram, v: int, outgoing: set[int]) -> int:
    """Crossing sign: positive iff the over out-dart is the ccw
    successor of the under out-dart, with out-darts taken from the
    strand orientations in `outgoing`."""
    o_out = next(x for x in (4 * v + k for k in range(4)) if d.is_over(x) and x in outgoing)
    u_out = next(x for x in (4 * v + k for k in range(4)) if not d.is_over(x) and x in outgoing)
    return 1 if sigma(u_out) == o_out else -1


def to_json(d: Diagram, coloring=None, indent: int | None = None) -> str:
    payload = {
        "format": JSON_FORMAT,
        "version": JSON_VERSION,
        "vertices": d.n_vertices,
        "alpha": list(d.alpha),
        "crossing": list(d.crossing) if d.crossing is not None else None,
        "free_loops": d.free_loops,
    }
    if coloring is not None:
        payload["coloring"] = coloring.to_payload()
    return json.dumps(payload, indent=indent)


def from_json(text: str) -> Diagram:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}", exc.lineno, exc.colno) from exc
    if not isinstance(payload, dict):
        raise SchemaError("top level must be an object")
    if payload.get("format") != JSON_FORMAT:
        raise SchemaError(f"unknown format {payload.get('format')!r}")
    alpha = payload.get("alpha")
    if not isinstance(alpha, list) or not all(isinstance(x, int) for x in alpha):
        raise SchemaError("alpha must be a list of ints")
    if len(alpha) % 4 != 0:
        raise SchemaError(f"dart count {len(alpha)} is not a multiple of 4 (vertices must own 4 darts)")
    declared = payload.get("vertices")
    if declared is not None and declared != len(alpha) // 4:
        raise SchemaError("declared vertex count disagrees with alpha length")
    crossing = payload.get("crossing")
    if crossing is not None:
        if not isinstance(crossing, list) or not all(b in (0, 1) for b in crossing):
            raise SchemaError("crossing must be null or a list of 0/1 bits")
        crossing = tuple(crossing)
    free_loops = payload.get("free_loops", 0)
    if not isinstance(free_loops, int) or free_loops < 0:
        raise SchemaError("free_loops must be a nonnegative int")
    try:
        return Diagram(tuple(alpha), crossing=crossing, free_loops=free_loops)
    except ValidationError as exc:
        raise SchemaError(f"invalid map: {exc}") from exc


def json_payload(text: str) -> dict:
    """The raw JSON object (for callers needing the coloring payload)."""
    return json.loads(text)

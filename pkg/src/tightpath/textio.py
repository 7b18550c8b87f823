"""Plain-text file formats.

All writers emit sorted, canonical output so that loading and re-storing
a canonical file reproduces it byte for byte.

graph:      "graph <n>" header, one "u v" line per edge (0-indexed,
            u < v), then optional "label v c" lines.
hypergraph: "h3 <n>" header, one "a b c" line per triple (sorted).
colouring:  parallel to a hypergraph, "a b c R|B" lines.
(2,3)-graph: "g23 <n>" header, "e2 u v" and "e3 u v w" lines (pair
            sorted, witness last).
tight path: "tightpath <len> <colour>" header and one line of vertices.
"""

from __future__ import annotations

from .graph import Graph
from .hypergraph import BLUE, RED, Hypergraph3, TightPath3, TwoColoring
from .two_three import TwoThreeGraph

_COLOUR_CODE = {RED: "R", BLUE: "B"}
_CODE_COLOUR = {"R": RED, "B": BLUE}


def _split_header(text: str, tag: str) -> tuple[int, list[str]]:
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"empty {tag} document")
    head = lines[0].split()
    if len(head) != 2 or head[0] != tag:
        raise ValueError(f"bad {tag} header: {lines[0]!r}")
    return int(head[1]), lines[1:]


def format_graph(g: Graph) -> str:
    out = [f"graph {g.num_vertices}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    if g.vertex_labels is not None:
        out.extend(f"label {v} {c}" for v, c in enumerate(g.vertex_labels))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    n, lines = _split_header(text, "graph")
    edges: list[tuple[int, int]] = []
    labels: dict[int, int] = {}
    for i, line in enumerate(lines, start=2):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "label":
            if len(parts) != 3:
                raise ValueError(f"line {i}: bad label line {line!r}")
            labels[int(parts[1])] = int(parts[2])
        elif len(parts) == 2:
            u, v = int(parts[0]), int(parts[1])
            edges.append((u, v))
        else:
            raise ValueError(f"line {i}: bad edge line {line!r}")
    vertex_labels = None
    if labels:
        if set(labels) != set(range(n)):
            raise ValueError("label lines must cover every vertex or none")
        vertex_labels = [labels[v] for v in range(n)]
    return Graph(n, edges, vertex_labels=vertex_labels)


def format_hypergraph(h: Hypergraph3) -> str:
    out = [f"h3 {h.num_vertices}"]
    out.extend(f"{a} {b} {c}" for a, b, c in h.triples())
    return "\n".join(out) + "\n"


def parse_hypergraph(text: str) -> Hypergraph3:
    n, lines = _split_header(text, "h3")
    triples = []
    for i, line in enumerate(lines, start=2):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 3:
            raise ValueError(f"line {i}: bad triple line {line!r}")
        triples.append((int(parts[0]), int(parts[1]), int(parts[2])))
    return Hypergraph3(n, triples)


def format_colouring(c: TwoColoring) -> str:
    out = []
    for (a, b, d), colour in c.items():
        out.append(f"{a} {b} {d} {_COLOUR_CODE[colour]}")
    return "\n".join(out) + "\n"


def parse_colouring(text: str, host: Hypergraph3) -> TwoColoring:
    """Load a colouring against its host; triples absent from the host
    are rejected, as is an incomplete colouring."""
    from .packing import pack3

    mapping: dict[int, str] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 4 or parts[3] not in _CODE_COLOUR:
            raise ValueError(f"line {i}: bad colouring line {line!r}")
        a, b, d = int(parts[0]), int(parts[1]), int(parts[2])
        if not host.has(a, b, d):
            raise ValueError(f"line {i}: ({a},{b},{d}) is not a triple of the host")
        mapping[pack3(a, b, d)] = _CODE_COLOUR[parts[3]]
    return TwoColoring(host, mapping)


def format_two_three(f: TwoThreeGraph) -> str:
    out = [f"g23 {f.num_vertices}"]
    out.extend(f"e2 {u} {v}" for u, v in f.edges2())
    out.extend(f"e3 {u} {v} {w}" for u, v, w in f.edges3())
    return "\n".join(out) + "\n"


def parse_two_three(text: str) -> TwoThreeGraph:
    n, lines = _split_header(text, "g23")
    two, three = [], []
    for i, line in enumerate(lines, start=2):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "e2" and len(parts) == 3:
            two.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "e3" and len(parts) == 4:
            three.append((int(parts[1]), int(parts[2]), int(parts[3])))
        else:
            raise ValueError(f"line {i}: bad edge line {line!r}")
    return TwoThreeGraph(n, two, three)


def format_tight_path(p: TightPath3, colour: str) -> str:
    head = f"tightpath {len(p.vertices)} {_COLOUR_CODE[colour]}"
    body = " ".join(str(v) for v in p.vertices)
    return f"{head}\n{body}\n" if p.vertices else f"{head}\n"


def parse_tight_path(text: str) -> tuple[TightPath3, str]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty tight path document")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "tightpath" or head[2] not in _CODE_COLOUR:
        raise ValueError(f"bad tightpath header: {lines[0]!r}")
    count = int(head[1])
    vertices: list[int] = []
    for line in lines[1:]:
        vertices.extend(int(x) for x in line.split())
    if len(vertices) != count:
        raise ValueError(f"expected {count} vertices, found {len(vertices)}")
    return TightPath3(tuple(vertices)), _CODE_COLOUR[head[2]]

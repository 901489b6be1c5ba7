"""Static drawings: Graphviz DOT and plain SVG with objects as colored overlays."""

from __future__ import annotations

from xml.sax.saxutils import escape

import networkx as nx

from .generators import Instance
from .netspace import id_key

__all__ = ["layout", "to_dot", "to_svg"]

PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]


def _color(c) -> str:
    if c is None:
        return "#000000"
    return PALETTE[c % len(PALETTE)]


def layout(inst: Instance) -> dict:
    """Node -> (x, y): stored coordinates, else a seeded spring layout."""
    space = inst.space
    if space.coords and all(n in space.coords for n in space.nodes):
        return {n: tuple(map(float, space.coords[n])) for n in space.nodes}
    g = nx.Graph()
    g.add_nodes_from(space.nodes)
    g.add_edges_from((e.u, e.v) for e in space.edges.values())
    if space.is_tree:
        pos = nx.kamada_kawai_layout(g) if len(g) > 1 else {space.nodes[0]: (0.0, 0.0)}
    else:
        pos = nx.spring_layout(g, seed=0)
    return {n: (round(float(p[0]), 6), round(float(p[1]), 6)) for n, p in pos.items()}


def _q(name) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(inst: Instance, colors: dict | None = None) -> str:
    """Undirected DOT graph; each object adds one colored overlay edge per edge it touches."""
    colors = colors or {}
    space = inst.space
    lines = ["graph network {", "  node [shape=point];"]
    for n in space.nodes:
        lines.append(f"  {_q(n)} [xlabel={_q(n)}];")
    for eid in space.edge_ids():
        e = space.edges[eid]
        lines.append(f"  {_q(e.u)} -- {_q(e.v)} [label={_q(f'{eid}: {e.length}')}, color=\"#999999\"];")
    for obj in sorted(inst.objects, key=lambda o: id_key(o.id)):
        reg = obj.extent(space)
        c = colors.get(obj.id)
        for eid in sorted(reg.pieces, key=id_key):
            e = space.edges[eid]
            span = ", ".join(f"[{a}, {b}]" for a, b in reg.pieces[eid])
            label = f"{obj.id}" + (f" c{c}" if c is not None else "") + f" {span}"
            lines.append(
                f"  {_q(e.u)} -- {_q(e.v)} [color={_q(_color(c))}, penwidth=2, label={_q(label)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(inst: Instance, colors: dict | None = None, size: int = 600) -> str:
    """SVG with the space in grey and each object's pieces drawn as offset colored strokes."""
    colors = colors or {}
    space = inst.space
    pos = layout(inst)
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 30

    def px(node_or_xy):
        x, y = pos[node_or_xy] if not isinstance(node_or_xy, tuple) else node_or_xy
        return (margin + (x - min(xs)) / span * (size - 2 * margin),
                margin + (y - min(ys)) / span * (size - 2 * margin))

    def along(eid, t):
        e = space.edges[eid]
        (x1, y1), (x2, y2) = px(e.u), px(e.v)
        f = float(t / e.length)
        return x1 + (x2 - x1) * f, y1 + (y2 - y1) * f

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for eid in space.edge_ids():
        e = space.edges[eid]
        (x1, y1), (x2, y2) = px(e.u), px(e.v)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#bbbbbb" stroke-width="2"/>')
    objs = sorted(inst.objects, key=lambda o: id_key(o.id))
    for rank, obj in enumerate(objs):
        reg = obj.extent(space)
        c = colors.get(obj.id)
        shift = 3 + 2.5 * (rank % 6)
        for eid in sorted(reg.pieces, key=id_key):
            e = space.edges[eid]
            (x1, y1), (x2, y2) = px(e.u), px(e.v)
            dx, dy = x2 - x1, y2 - y1
            norm = (dx * dx + dy * dy) ** 0.5 or 1.0
            ox, oy = -dy / norm * shift, dx / norm * shift
            for a, b in reg.pieces[eid]:
                (ax, ay), (bx, by) = along(eid, a), along(eid, b)
                title = escape(f"{obj.id}" + (f" color {c}" if c is not None else ""))
                out.append(
                    f'<line x1="{ax + ox:.2f}" y1="{ay + oy:.2f}" x2="{bx + ox:.2f}" y2="{by + oy:.2f}" '
                    f'stroke="{_color(c)}" stroke-width="2" stroke-linecap="round"><title>{title}</title></line>'
                )
    for n in space.nodes:
        x, y = px(n)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        out.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="10">{escape(str(n))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

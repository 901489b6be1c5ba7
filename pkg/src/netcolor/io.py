"""JSON instance and coloring files.

Rationals are written as ``"p/q"`` strings (``"3"`` for integers) so files
round-trip exactly.  Output is sorted and indented, hence byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .coloring import Coloring
from .generators import Instance
from .netspace import Ball, NetworkSpace, Point, SubtreeRegion, as_rational, id_key

__all__ = [
    "InstanceFormatError",
    "coloring_to_dict",
    "dumps",
    "instance_from_dict",
    "instance_to_dict",
    "load_coloring",
    "load_instance",
    "save_coloring",
    "save_instance",
]


class InstanceFormatError(ValueError):
    """Raised for malformed instance or coloring documents."""


def _q(x) -> str:
    return str(Fraction(x))


def _rat(value, what: str) -> Fraction:
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"bad rational for {what}: {value!r}") from exc


def _space_kind(space: NetworkSpace) -> str:
    if space.is_path:
        return "path"
    if space.is_tree:
        return "tree"
    return "planar" if space.is_planar else "graph"


def _point_to_dict(p: Point) -> dict:
    if p.is_node:
        return {"node": p.node}
    return {"edge": p.edge, "offset": _q(p.offset)}


def instance_to_dict(inst: Instance) -> dict:
    space = inst.space
    doc = {
        "space": {
            "kind": _space_kind(space),
            "nodes": list(space.nodes),
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, "len": _q(e.length)}
                for e in (space.edges[i] for i in space.edge_ids())
            ],
        },
        "objects": [],
        "meta": dict(inst.meta),
    }
    if space.allow_degree2:
        doc["space"]["allow_degree2"] = True
    if space.coords:
        doc["space"]["coords"] = [[n, list(space.coords[n])] for n in sorted(space.coords, key=id_key)]
    for obj in sorted(inst.objects, key=lambda o: id_key(o.id)):
        if isinstance(obj, Ball):
            doc["objects"].append(
                {"id": obj.id, "kind": "ball", "center": _point_to_dict(obj.center), "radius": _q(obj.radius)}
            )
        elif isinstance(obj, SubtreeRegion):
            doc["objects"].append(
                {
                    "id": obj.id,
                    "kind": "subtree",
                    "fragments": [{"edge": eid, "lo": _q(a), "hi": _q(b)} for eid, a, b in obj.fragments],
                }
            )
        else:
            raise TypeError(f"cannot serialize object {obj!r}")
    return doc


def instance_from_dict(doc: dict) -> Instance:
    try:
        sp = doc["space"]
        edges = [(e["id"], e["u"], e["v"], _rat(e["len"], f"edge {e['id']!r}")) for e in sp["edges"]]
        coords = {n: tuple(xy) for n, xy in sp.get("coords", [])}
        space = NetworkSpace(edges, nodes=sp.get("nodes"), coords=coords,
                             allow_degree2=bool(sp.get("allow_degree2", False)))
        objects = []
        for o in doc["objects"]:
            kind = o.get("kind")
            if kind == "ball":
                c = o["center"]
                if "node" in c:
                    center = Point.at(c["node"])
                else:
                    center = space.point(c["edge"], _rat(c["offset"], f"center of {o['id']!r}"))
                ball = Ball(o["id"], center, _rat(o["radius"], f"radius of {o['id']!r}"))
                space.check_point(ball.center)
                objects.append(ball)
            elif kind == "subtree":
                frags = tuple((f["edge"], _rat(f["lo"], "fragment"), _rat(f["hi"], "fragment")) for f in o["fragments"])
                for eid, a, b in frags:
                    if eid not in space.edges or not 0 <= a <= b <= space.edges[eid].length:
                        raise InstanceFormatError(f"fragment ({eid!r}, {a}, {b}) of {o['id']!r} is off the space")
                objects.append(SubtreeRegion(o["id"], frags))
            else:
                raise InstanceFormatError(f"unknown object kind {kind!r}")
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"malformed instance: {exc}") from exc
    ids = [o.id for o in objects]
    if len(set(ids)) != len(ids):
        raise InstanceFormatError("duplicate object ids")
    return Instance(space, objects, dict(doc.get("meta", {})))


def _default(x):
    if isinstance(x, Fraction):
        return _q(x)
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x, key=id_key) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"{type(x).__name__} is not serializable")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False, default=_default) + "\n"


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(instance_to_dict(inst)), encoding="utf-8")


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path} is not valid JSON: {exc}") from exc


def load_instance(path) -> Instance:
    return instance_from_dict(_read_json(path))


def coloring_to_dict(coloring: Coloring, algorithm: str, bound: dict | None = None) -> dict:
    """``{algorithm, palette_size, colors, bound}``; ``colors`` keys are ``str(id)``."""
    return {
        "algorithm": algorithm,
        "palette_size": coloring.palette_size,
        "colors": {str(i): coloring.colors[i] for i in sorted(coloring.colors, key=id_key)},
        "bound": bound,
    }


def save_coloring(doc: dict, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def load_coloring(path, inst: Instance) -> dict:
    """Object id -> color, matching the file's string keys against the instance ids."""
    doc = _read_json(path)
    raw = doc.get("colors") if isinstance(doc, dict) else None
    if not isinstance(raw, dict):
        raise InstanceFormatError("coloring file has no 'colors' object")
    by_key = {str(o.id): o.id for o in inst.objects}
    out = {}
    for key, c in raw.items():
        if key not in by_key:
            raise InstanceFormatError(f"coloring names unknown object {key!r}")
        if not isinstance(c, int) or isinstance(c, bool):
            raise InstanceFormatError(f"color of {key!r} is not an integer")
        out[by_key[key]] = c
    missing = sorted(set(by_key) - set(raw))
    if missing:
        raise InstanceFormatError(f"coloring misses objects {missing[:5]}")
    return out

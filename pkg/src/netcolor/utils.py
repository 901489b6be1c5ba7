"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

from .generators import Instance
from .netspace import Ball, NetworkSpace, SubtreeRegion

__all__ = ["check_instance", "check_objects", "check_space"]


def check_space(space, kind: str | None = None) -> NetworkSpace:
    """Return ``space`` if it is a :class:`NetworkSpace` of the requested kind.

    ``kind`` is one of ``None``, ``"path"``, ``"tree"``, ``"planar"``.
    """
    if not isinstance(space, NetworkSpace):
        raise TypeError(f"expected a NetworkSpace, got {type(space).__name__}")
    if kind == "path" and not space.is_path:
        raise ValueError("a path space is required")
    if kind == "tree" and not space.is_tree:
        raise ValueError("a tree space is required")
    if kind == "planar" and not space.is_planar:
        raise ValueError("a planar space is required")
    if kind not in (None, "path", "tree", "planar"):
        raise ValueError(f"unknown space kind {kind!r}")
    return space


def check_objects(space: NetworkSpace, objects, kind: str | None = None) -> list:
    """Objects as a list; ids unique, all of one ``kind`` (``ball``/``subtree``) if given."""
    objects = list(objects)
    types = {"ball": Ball, "subtree": SubtreeRegion}
    if kind is not None and kind not in types:
        raise ValueError(f"unknown object kind {kind!r}")
    seen = set()
    for o in objects:
        if not isinstance(o, (Ball, SubtreeRegion)):
            raise TypeError(f"unsupported object {o!r}")
        if kind is not None and not isinstance(o, types[kind]):
            raise TypeError(f"object {o.id!r} is not a {kind}")
        if o.id in seen:
            raise ValueError(f"duplicate object id {o.id!r}")
        seen.add(o.id)
        if isinstance(o, Ball):
            space.check_point(o.center)
        else:
            for eid, a, b in o.fragments:
                if eid not in space.edges or b > space.edges[eid].length:
                    raise ValueError(f"fragment ({eid!r}, {a}, {b}) of {o.id!r} is off the space")
            if not o.extent(space).is_connected(space):
                raise ValueError(f"subtree {o.id!r} is not connected")
    return objects


def check_instance(X, space_kind: str | None = None, object_kind: str | None = None) -> tuple:
    """Accept an :class:`Instance` or a ``(space, objects)`` pair."""
    if isinstance(X, Instance):
        space, objects = X.space, X.objects
    else:
        try:
            space, objects = X
        except (TypeError, ValueError) as exc:
            raise TypeError("expected an Instance or a (space, objects) pair") from exc
    space = check_space(space, space_kind)
    return space, check_objects(space, objects, object_kind)

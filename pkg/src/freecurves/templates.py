"""Rank-two families that are blow-ups of an index-r Fano threefold Y.

In the del Pezzo kind the centre is the base curve of a pencil in
``|(r-1)H|`` and ``|(r-1)H - E|`` maps X onto P^1.  In the conic kind the
centre is cut out by a net in ``|(r-1)H|`` and the net maps X onto P^2 with
conic fibres.  Core, relations and extras depend only on the kind and on r,
so the shipped family files are rendered from here.
Writing ``n = r - 1``, the contracted line class is ``l - n e`` and the
interior conic is ``l - (n - 1) e``.
"""
from __future__ import annotations

from .familydb import FamilyRecord, parse_family, serialize

__all__ = ["TEMPLATE_FAMILIES", "template_text", "template_family", "render_template"]

DEL_PEZZO = "del_pezzo"
CONIC = "conic"

# id -> (kind, r, description, (-K)^3)
TEMPLATE_FAMILIES = {
    "2.1": (DEL_PEZZO, 2, "blow-up of V1 along an elliptic curve cut out by two half-anticanonical divisors", 4),
    "2.3": (DEL_PEZZO, 2, "blow-up of V2 along an elliptic curve cut out by two half-anticanonical divisors", 8),
    "2.4": (DEL_PEZZO, 4, "blow-up of projective space along the intersection of two cubics", 10),
    "2.5": (DEL_PEZZO, 2, "blow-up of V3 along a plane cubic", 12),
    "2.7": (DEL_PEZZO, 3, "blow-up of the quadric threefold along the intersection of two quadric sections", 14),
    "2.9": (CONIC, 4, "blow-up of projective space along a curve of degree 7 and genus 5 cut out by cubics", 16),
    "2.10": (DEL_PEZZO, 2, "blow-up of V4 along an elliptic curve cut out by two hyperplane sections", 16),
    "2.11": (CONIC, 2, "blow-up of V3 along a line", 18),
    "2.13": (CONIC, 3, "blow-up of the quadric threefold along a curve of degree 6 and genus 2", 20),
    "2.14": (DEL_PEZZO, 2, "blow-up of V5 along an elliptic curve cut out by two hyperplane sections", 20),
    "2.16": (CONIC, 2, "blow-up of V4 along a conic", 22),
    "2.20": (CONIC, 2, "blow-up of V5 along a twisted cubic", 26),
}

_CORE = {
    (DEL_PEZZO, 2): ["2l - 2e", "l", "3l - 3e", "2l - e"],
    (DEL_PEZZO, 3): ["2l - 4e", "l - e", "3l - 6e", "2l - 3e", "l"],
    (DEL_PEZZO, 4): ["2l - 6e", "l - 2e", "3l - 9e", "2l - 5e", "l - e", "l"],
    (CONIC, 2): ["2l - 2e", "l", "2l - e"],
    (CONIC, 3): ["2l - 4e", "l - e", "2l - 3e", "l"],
    (CONIC, 4): ["2l - 6e", "l - 2e", "2l - 5e", "l - e", "l"],
}

# Relations by core number; a chained equality a = b = c is stored as a = b and a = c.
_RELATIONS = {
    (DEL_PEZZO, 2): ["2+2+1 = 4+4", "2+1+1 = 3+4", "2+3 = 4+1", "1+1+1 = 3+3"],
    (DEL_PEZZO, 3): ["5+4 = 2+2+2", "5+1 = 2+4", "5+3 = 2+2+1", "5+3 = 4+4",
                     "2+1+1 = 4+3", "2+3 = 4+1", "1+1+1 = 3+3"],
    (DEL_PEZZO, 4): ["6+2 = 5+5", "6+1 = 5+4", "6+1 = 2+2+2", "6+4 = 5+2+2",
                     "6+3 = 2+2+4", "5+1 = 2+4", "5+3 = 2+2+1", "5+3 = 4+4",
                     "2+1+1 = 4+3", "2+3 = 4+1", "1+1+1 = 3+3"],
    (CONIC, 2): ["2+2+1 = 3+3"],
    (CONIC, 3): ["4+3 = 2+2+2", "4+1 = 2+3", "2+2+1 = 3+3"],
    (CONIC, 4): ["5+2 = 4+4", "5+1 = 4+3", "5+1 = 2+2+2", "5+3 = 4+2+2",
                 "4+1 = 2+3", "2+2+1 = 3+3"],
}


def _cls(a, b):
    if b == 0:
        return "l" if a == 1 else f"{a}l"
    head = "l" if a == 1 else f"{a}l"
    tail = "e" if b == 1 else f"{b}e"
    return f"{head} - {tail}"


def _extras(kind, r):
    n = r - 1
    out = []
    if kind == CONIC:
        out.append((_cls(3, 3 * n), "odd multiple of the contracted line; empty"))
    out.append((_cls(4, 4 * n), "fiber quartics; break into conics of class " + _cls(2, 2 * n)
                if kind == DEL_PEZZO else "double covers of fiber conics"))
    out.append((_cls(3, 3 * n - 1), f"breaks into {_cls(2, 2 * n)} and {_cls(1, n - 1)}"))
    out.append((_cls(2, 2 * n - 2), f"breaks into two copies of {_cls(1, n - 1)}"))
    return out


def template_text(fid: str) -> str:
    """Authoring-form family file for a template family."""
    kind, r, name, kx3 = TEMPLATE_FAMILIES[fid]
    n = r - 1
    line, conic = _cls(1, n), _cls(1, n - 1)
    out = ["[meta]", "schema = 1", f"id = {fid}", f"name = {name}", "status = template",
           f"kx3 = {kx3}", "tau = l" if kind == DEL_PEZZO else "tau = 0",
           "", "[bases]", "curve = l, e", "divisor = H, E",
           "", "[pairing]", "1, 0", "0, -1",
           "", "[anticanonical]", f"{r}H - E",
           "", "[effective]", "E", "H - E" if n == 1 else f"{n}H - E",
           "", "[mori]", "e", line,
           "", "[core]", *_CORE[kind, r]]
    if kind == CONIC:
        out += ["", "[separating]", str(_CORE[kind, r].index(conic) + 1)]
    out += ["", "[relations]", *_RELATIONS[kind, r]]
    out += ["", "[extras]", *(f"{c} | {why}" for c, why in _extras(kind, r))]
    out += ["", "[census]"]
    if kind == CONIC:
        out.append(f"c1_line = {line}")
    else:
        out.append(f"dp_cone = {line}")
    out.append(f"interior_conic = {conic}")
    if kind == DEL_PEZZO:
        out.append("requires_generality = yes")
    return "\n".join(out) + "\n"


def template_family(fid: str) -> FamilyRecord:
    return parse_family(template_text(fid), f"<template {fid}>")


def render_template(fid: str) -> str:
    """Canonical file contents shipped for a template family."""
    return serialize(template_family(fid))

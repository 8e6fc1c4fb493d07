"""Per-family data sheets: the ``.fam`` text format, loading and validation.

A family file is a sequence of ``[section]`` blocks.  ``#`` starts a
comment.  Vectors are comma-separated integers in the basis order declared
in ``[bases]``; when a file is being authored, a vector may also be written
as a linear expression in the basis names (``2l - e_p - 2e_c``).
:func:`serialize` always writes the integer form, followed by the
expression as a comment, so a canonical file round-trips byte for byte.

Sections and their line syntax::

    [meta]          key = value      (schema, id, name, kx3, tau, status,
                                      reduces_to, window, window_exceptions)
    [bases]         curve = l, e ... / divisor = H, E ...
    [pairing]       one row of integers per divisor basis element
    [anticanonical] one divisor vector
    [effective]     divisor vectors
    [mori]          curve vectors
    [core]          curve vectors, numbered from 1
    [separating]    comma-separated core numbers
    [relations]     1+2+2 = 3+4   (core numbers)
    [witnesses]     order = ... then one divisor vector (or ``derive``) per line
    [pseudosymmetry] name [involution|symmetry] = row; row; ...
                    (or, when authoring, name = x -> expr; y -> expr)
    [extras]        vector | reason
    [omissions]     vector | reason
    [census]        c1_line / interior_conic / half_ksq / aux = vector,
                    dp_cone = vector; vector; ..., requires_generality = yes|no
    [errata]        field | printed | recomputed
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import _linalg as la
from .cones import RationalCone, dual_cone
from .errors import DataError, FamilyNotFound, PairingError
from .lattice import CurveClass, DivisorClass, IntersectionForm, pair
from .relations import MonoidRelation, WitnessDivisors, verify_relation

__all__ = [
    "SCHEMA_VERSION",
    "FamilyRecord",
    "Pseudosymmetry",
    "CensusFlags",
    "Annotated",
    "data_dir",
    "list_families",
    "load_family",
    "parse_family",
    "serialize",
    "validate",
    "blowup_invariants",
]

SCHEMA_VERSION = 1
DATA_ENV = "FREECURVES_DATA"

SECTIONS = ("meta", "bases", "pairing", "anticanonical", "effective", "mori", "core",
            "separating", "relations", "witnesses", "pseudosymmetry", "extras",
            "omissions", "census", "errata")
META_KEYS = ("schema", "id", "name", "kx3", "tau", "status", "reduces_to", "window",
             "window_exceptions")
CENSUS_KEYS = ("c1_line", "interior_conic", "dp_cone", "half_ksq", "requires_generality", "aux")
STATUSES = ("complete", "template", "reduction")


@dataclass(frozen=True)
class Pseudosymmetry:
    """Lattice automorphism acting on curve coordinates (column j = image of basis j)."""

    name: str
    matrix: tuple
    tag: str = ""   # "involution", "symmetry" or ""

    @property
    def involution(self) -> bool:
        return self.tag == "involution"

    def apply(self, c):
        return CurveClass(la.matvec(self.matrix, tuple(c)))

    def divisor_matrix(self, form: IntersectionForm) -> tuple:
        """Matrix Q on divisor coordinates with (Q D) . (P c) = D . c."""
        m = form.matrix
        q_t = la.matmul(la.matmul(m, la.inverse(self.matrix)), la.inverse(m))
        out = []
        for row in la.transpose(q_t):
            if any(x.denominator != 1 for x in row):
                raise DataError(f"{self.name} has no integral divisor action")
            out.append(tuple(int(x) for x in row))
        return tuple(out)


@dataclass(frozen=True)
class Annotated:
    """A curve class with a one-line reason."""

    cls: CurveClass
    reason: str = ""


@dataclass(frozen=True)
class CensusFlags:
    c1_lines: tuple = ()
    interior_conic: Optional[CurveClass] = None
    dp_cones: tuple = ()           # RationalCone, kind "curve"
    half_ksq: Optional[CurveClass] = None
    requires_generality: bool = False
    aux: tuple = ()


@dataclass(frozen=True)
class FamilyRecord:
    id: str
    rank: int = 0
    name: str = ""
    status: str = "complete"
    reduces_to: str = ""
    kx3: Optional[int] = None
    curve_basis_names: tuple = ()
    divisor_basis_names: tuple = ()
    pairing: Optional[IntersectionForm] = None
    anticanonical: Optional[DivisorClass] = None
    effective_generators: tuple = ()
    mori_generators: tuple = ()
    core: tuple = ()
    separating: tuple = ()          # 0-based core indices
    relations: tuple = ()
    witnesses: Optional[WitnessDivisors] = None
    pseudosymmetries: tuple = ()
    tau: tuple = ()                 # shift classes; several when the theorem allows a choice
    extras: tuple = ()
    omissions: tuple = ()
    census: CensusFlags = field(default_factory=CensusFlags)
    errata: tuple = ()
    window: tuple = (2, 4)
    window_exceptions: tuple = ()   # 0-based core indices allowed outside the window
    aliases: tuple = ()             # (kind, name, vector) shorthands declared in [bases]
    # derived cones; not copied by dataclasses.replace
    _cones: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def is_reduction(self) -> bool:
        return self.status == "reduction"

    def degree(self, c) -> int:
        c = c if isinstance(c, CurveClass) else CurveClass(c)
        return pair(self.pairing, self.anticanonical, c)

    def _cone(self, key, build):
        if key not in self._cones:
            self._cones[key] = build()
        return self._cones[key]

    def effective_cone(self) -> RationalCone:
        return self._cone("effective", lambda: RationalCone(
            [d.coords for d in self.effective_generators], dim=self.rank, kind="divisor"))

    def mori_cone(self) -> RationalCone:
        return self._cone("mori", lambda: RationalCone(
            [c.coords for c in self.mori_generators], dim=self.rank, kind="curve"))

    def nef_cone(self) -> RationalCone:
        """Nef curve cone: classes pairing nonnegatively with every effective divisor."""
        return self._cone("nef", lambda: dual_cone(self.effective_cone(), self.pairing))

    def nef_divisor_cone(self) -> RationalCone:
        return self._cone("nef_divisor", lambda: dual_cone(self.mori_cone(), self.pairing))

    def core_index(self, c) -> Optional[int]:
        c = tuple(c)
        for i, k in enumerate(self.core):
            if k.coords == c:
                return i
        return None

    def format_curve(self, c) -> str:
        return format_expr(tuple(c), self.curve_basis_names)

    def format_divisor(self, d) -> str:
        return format_expr(tuple(d), self.divisor_basis_names)


# -- expressions ------------------------------------------------------------

_NAME = r"[A-Za-z][A-Za-z0-9_']*"


def format_expr(v, names) -> str:
    parts = []
    for x, name in zip(v, names):
        if x == 0:
            continue
        mag = abs(x)
        body = name if mag == 1 else f"{mag}{name}"
        if not parts:
            parts.append(body if x > 0 else f"-{body}")
        else:
            parts.append(("+ " if x > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


_TOKEN = re.compile(rf"\s*(?:(\d+)|({_NAME})|([-+*()]))")


def _tokenize(text, where):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DataError(f"cannot parse {text!r}", where)
        num, name, op = m.groups()
        toks.append(("num", int(num)) if num else ("name", name) if name else ("op", op))
        pos = m.end()
    return toks


def _parse_expr(text, names, aliases, where):
    """Integer vector of a linear expression in basis names and aliases.

    Grammar: expr = [sign] term (sign term)*, term = [int] [*] (name | (expr)),
    plus the literal 0.
    """
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    toks = _tokenize(text, where)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def fail():
        raise DataError(f"cannot parse {text!r}", where)

    def expr():
        nonlocal pos
        total = [0] * n
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if peek()[1] == "-" else 1
            pos += 1
        while True:
            v = term()
            total = [a + sign * b for a, b in zip(total, v)]
            if peek() in (("op", "+"), ("op", "-")):
                sign = -1 if peek()[1] == "-" else 1
                pos += 1
            else:
                return total

    def term():
        nonlocal pos
        k = 1
        kind, val = peek()
        if kind == "num":
            k = val
            pos += 1
            if peek() == ("op", "*"):
                pos += 1
            kind, val = peek()
            if kind is None or (kind == "op" and val in "+-)"):
                if k == 0:
                    return [0] * n
                fail()
        if kind == "name":
            pos += 1
            if val in index:
                v = [int(i == index[val]) for i in range(n)]
            elif val in aliases:
                v = list(aliases[val])
            else:
                raise DataError(f"unknown basis name {val!r}", where)
        elif (kind, val) == ("op", "("):
            pos += 1
            v = expr()
            if peek() != ("op", ")"):
                fail()
            pos += 1
        else:
            fail()
        return [k * x for x in v]

    if not toks:
        raise DataError("empty expression", where)
    out = expr()
    if pos != len(toks):
        fail()
    return tuple(out)


def _is_int_vector(s):
    return re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)*\s*", s) is not None


def _vector(text, names, aliases, where):
    if text.strip() == "0":
        return (0,) * len(names)
    if _is_int_vector(text):
        v = tuple(int(x) for x in text.split(","))
        if len(v) != len(names):
            raise DataError(f"expected {len(names)} coordinates, got {len(v)}", where)
        return v
    return _parse_expr(text, names, aliases, where)


# -- parsing ----------------------------------------------------------------

def _split_sections(text, source):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[([a-z_]+)\]", line)
        if m:
            name = m.group(1)
            if name not in SECTIONS:
                raise DataError(f"unknown section [{name}]", f"{source}:{lineno}")
            if name in sections:
                raise DataError(f"duplicate section [{name}]", f"{source}:{lineno}")
            sections[name] = []
            current = name
            continue
        if current is None:
            raise DataError("content before the first section", f"{source}:{lineno}")
        sections[current].append((lineno, line))
    return sections


def _keyvals(lines, allowed, section, source, repeatable=()):
    out = {}
    for lineno, line in lines:
        if "=" not in line:
            raise DataError(f"expected key = value in [{section}]", f"{source}:{lineno}")
        k, v = (x.strip() for x in line.split("=", 1))
        if k not in allowed:
            raise DataError(f"unknown key {k!r} in [{section}]", f"{source}:{lineno}")
        if k in repeatable:
            out.setdefault(k, []).append((lineno, v))
        else:
            if k in out:
                raise DataError(f"duplicate key {k!r} in [{section}]", f"{source}:{lineno}")
            out[k] = (lineno, v)
    return out


def _parse_index_list(v, n, where):
    if not v.strip():
        return ()
    out = []
    for tok in v.split(","):
        tok = tok.strip()
        if not tok.isdigit() or not 1 <= int(tok) <= n:
            raise DataError(f"bad core number {tok!r}", where)
        out.append(int(tok) - 1)
    return tuple(out)


def _parse_relation(line, n, where):
    if line.count("=") != 1:
        raise DataError("relation needs exactly one '='", where)
    sides = []
    for side in line.split("="):
        idx = []
        for tok in side.split("+"):
            tok = tok.strip()
            m = re.fullmatch(r"(?:(\d+)\s*\*\s*)?(\d+)", tok)
            if not m:
                raise DataError(f"bad relation term {tok!r}", where)
            mult = int(m.group(1)) if m.group(1) else 1
            i = int(m.group(2))
            if not 1 <= i <= n:
                raise DataError(f"core number {i} out of range", where)
            idx.extend([i - 1] * mult)
        sides.append(idx)
    return MonoidRelation(sides[0], sides[1])


def _parse_matrix(v, names, aliases, where):
    n = len(names)
    if "->" in v:
        cols = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        index = {nm: i for i, nm in enumerate(names)}
        for part in v.split(";"):
            part = part.strip()
            if not part:
                continue
            src, dst = (x.strip() for x in part.split("->", 1))
            if src not in index:
                raise DataError(f"unknown basis name {src!r}", where)
            cols[index[src]] = _vector(dst, names, aliases, where)
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    rows = [r.strip() for r in v.split(";")]
    if len(rows) != n:
        raise DataError(f"matrix needs {n} rows", where)
    out = []
    for r in rows:
        if not _is_int_vector(r) or len(r.split(",")) != n:
            raise DataError(f"matrix row {r!r} is not {n} integers", where)
        out.append(tuple(int(x) for x in r.split(",")))
    return tuple(out)


def _annotated(line, names, aliases, where):
    vec, _, reason = line.partition("|")
    return Annotated(CurveClass(_vector(vec.strip(), names, aliases, where)), reason.strip())


def parse_family(text: str, source: str = "<string>") -> FamilyRecord:
    """Parse a family file.  Raises DataError with a field path on any problem."""
    sec = _split_sections(text, source)
    if "meta" not in sec:
        raise DataError("missing [meta]", source)
    meta = _keyvals(sec["meta"], META_KEYS, "meta", source)
    for req in ("schema", "id"):
        if req not in meta:
            raise DataError(f"missing meta key {req!r}", f"{source}:meta")
    if meta["schema"][1] != str(SCHEMA_VERSION):
        raise DataError(f"unsupported schema {meta['schema'][1]!r}", f"{source}:meta.schema")
    fid = meta["id"][1]
    status = meta.get("status", (0, "complete"))[1]
    if status not in STATUSES:
        raise DataError(f"unknown status {status!r}", f"{fid}:meta.status")
    common = dict(id=fid, name=meta.get("name", (0, ""))[1], status=status,
                  reduces_to=meta.get("reduces_to", (0, ""))[1])
    if "kx3" in meta:
        try:
            common["kx3"] = int(meta["kx3"][1])
        except ValueError:
            raise DataError("kx3 must be an integer", f"{fid}:meta.kx3") from None
    if status == "reduction":
        extra = set(sec) - {"meta", "errata"}
        if extra:
            raise DataError(f"reduction record has data sections {sorted(extra)}", fid)
        if not common["reduces_to"]:
            raise DataError("reduction record needs reduces_to", f"{fid}:meta.reduces_to")
        return FamilyRecord(errata=_parse_errata(sec.get("errata", []), fid), **common)

    for req in ("bases", "pairing", "anticanonical", "effective", "core"):
        if req not in sec:
            raise DataError(f"missing section [{req}]", fid)
    bases = _keyvals(sec["bases"], ("curve", "divisor", "alias"), "bases", source,
                     repeatable=("alias",))
    if "curve" not in bases or "divisor" not in bases:
        raise DataError("bases needs curve and divisor", f"{fid}:bases")
    cn = tuple(x.strip() for x in bases["curve"][1].split(","))
    dn = tuple(x.strip() for x in bases["divisor"][1].split(","))
    rank = len(cn)
    if len(dn) != rank:
        raise DataError("curve and divisor bases differ in size", f"{fid}:bases")
    for nm in cn + dn:
        if not re.fullmatch(_NAME, nm):
            raise DataError(f"bad basis name {nm!r}", f"{fid}:bases")
    if len(set(cn + dn)) != 2 * rank:
        raise DataError("basis names must be distinct", f"{fid}:bases")
    c_alias, d_alias = {}, {}
    for lineno, v in bases.get("alias", []):
        m = re.fullmatch(rf"(curve|divisor)\s+({_NAME})\s*:\s*(.+)", v)
        if not m:
            raise DataError("alias syntax is 'curve|divisor NAME: expr'", f"{fid}:bases.alias")
        kind, nm, expr = m.groups()
        if kind == "curve":
            c_alias[nm] = _parse_expr(expr, cn, c_alias, f"{fid}:bases.alias")
        else:
            d_alias[nm] = _parse_expr(expr, dn, d_alias, f"{fid}:bases.alias")
    aliases = tuple((("curve", k, v) for k, v in c_alias.items())) + tuple(
        ("divisor", k, v) for k, v in d_alias.items())

    def cvec(s, where):
        return CurveClass(_vector(s, cn, c_alias, where))

    def dvec(s, where):
        return DivisorClass(_vector(s, dn, d_alias, where))

    rows = []
    for k, (lineno, line) in enumerate(sec["pairing"]):
        if not _is_int_vector(line) or len(line.split(",")) != rank:
            raise DataError(f"pairing row must be {rank} integers", f"{fid}:pairing[{k + 1}]")
        rows.append(tuple(int(x) for x in line.split(",")))
    if len(rows) != rank:
        raise DataError(f"pairing needs {rank} rows", f"{fid}:pairing")
    try:
        form = IntersectionForm(tuple(rows))
    except PairingError as exc:
        raise DataError(str(exc), f"{fid}:pairing") from None

    def vectors(name, conv):
        return tuple(conv(line, f"{fid}:{name}[{k + 1}]")
                     for k, (_, line) in enumerate(sec.get(name, [])))

    anti = vectors("anticanonical", dvec)
    if len(anti) != 1:
        raise DataError("anticanonical needs exactly one vector", f"{fid}:anticanonical")
    core = vectors("core", cvec)
    n = len(core)
    seps = ()
    if sec.get("separating"):
        if len(sec["separating"]) != 1:
            raise DataError("separating is a single line", f"{fid}:separating")
        seps = _parse_index_list(sec["separating"][0][1], n, f"{fid}:separating")
    rels = tuple(_parse_relation(line, n, f"{fid}:relations[{k + 1}]")
                 for k, (_, line) in enumerate(sec.get("relations", [])))

    witnesses = None
    if sec.get("witnesses"):
        lines = sec["witnesses"]
        first = lines[0][1]
        if not first.startswith("order"):
            raise DataError("witnesses must start with 'order = ...'", f"{fid}:witnesses")
        order = _parse_index_list(first.split("=", 1)[1], n, f"{fid}:witnesses.order")
        divs = tuple(None if line == "derive" else dvec(line, f"{fid}:witnesses[{k + 1}]")
                     for k, (_, line) in enumerate(lines[1:]))
        try:
            witnesses = WitnessDivisors(order, divs)
        except Exception as exc:
            raise DataError(str(exc), f"{fid}:witnesses") from None

    syms = []
    for k, (lineno, line) in enumerate(sec.get("pseudosymmetry", [])):
        m = re.fullmatch(rf"({_NAME})(?:\s+(involution|symmetry))?\s*=\s*(.+)", line)
        if not m:
            raise DataError("expected 'name [involution|symmetry] = ...'",
                            f"{fid}:pseudosymmetry[{k + 1}]")
        nm, tag, body = m.groups()
        syms.append(Pseudosymmetry(nm, _parse_matrix(body, cn, c_alias, f"{fid}:pseudosymmetry.{nm}"),
                                   tag or ""))

    extras = tuple(_annotated(line, cn, c_alias, f"{fid}:extras[{k + 1}]")
                   for k, (_, line) in enumerate(sec.get("extras", [])))
    omissions = tuple(_annotated(line, cn, c_alias, f"{fid}:omissions[{k + 1}]")
                      for k, (_, line) in enumerate(sec.get("omissions", [])))

    cs = _keyvals(sec.get("census", []), CENSUS_KEYS, "census", source,
                  repeatable=("c1_line", "dp_cone", "aux"))
    flags = CensusFlags(
        c1_lines=tuple(cvec(v, f"{fid}:census.c1_line") for _, v in cs.get("c1_line", [])),
        interior_conic=cvec(cs["interior_conic"][1], f"{fid}:census.interior_conic")
        if "interior_conic" in cs else None,
        dp_cones=tuple(RationalCone([cvec(g, f"{fid}:census.dp_cone").coords for g in v.split(";")],
                                    dim=rank, kind="curve")
                       for _, v in cs.get("dp_cone", [])),
        half_ksq=cvec(cs["half_ksq"][1], f"{fid}:census.half_ksq") if "half_ksq" in cs else None,
        requires_generality=_parse_bool(cs.get("requires_generality", (0, "no"))[1],
                                        f"{fid}:census.requires_generality"),
        aux=tuple(cvec(v, f"{fid}:census.aux") for _, v in cs.get("aux", [])),
    )

    tau = tuple(cvec(t, f"{fid}:meta.tau") for t in meta["tau"][1].split(";")) \
        if "tau" in meta else ()
    window = (2, 4)
    if "window" in meta:
        w = meta["window"][1]
        if not _is_int_vector(w) or len(w.split(",")) != 2:
            raise DataError("window is 'lo, hi'", f"{fid}:meta.window")
        window = tuple(int(x) for x in w.split(","))
    wexc = _parse_index_list(meta["window_exceptions"][1], n, f"{fid}:meta.window_exceptions") \
        if "window_exceptions" in meta else ()

    rec = FamilyRecord(
        rank=rank, curve_basis_names=cn, divisor_basis_names=dn, pairing=form,
        anticanonical=anti[0], effective_generators=vectors("effective", dvec),
        mori_generators=vectors("mori", cvec), core=core, separating=seps, relations=rels,
        witnesses=witnesses, pseudosymmetries=tuple(syms), tau=tau, extras=extras,
        omissions=omissions, census=flags, errata=_parse_errata(sec.get("errata", []), fid),
        window=window, window_exceptions=wexc, aliases=aliases, **common)
    return rec


def _parse_bool(v, where):
    if v in ("yes", "true"):
        return True
    if v in ("no", "false"):
        return False
    raise DataError(f"expected yes/no, got {v!r}", where)


def _parse_errata(lines, fid):
    out = []
    for k, (_, line) in enumerate(lines):
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise DataError("erratum is 'field | printed | recomputed'", f"{fid}:errata[{k + 1}]")
        out.append(tuple(parts))
    return tuple(out)


# -- serialization ----------------------------------------------------------

def _ints(v):
    return ", ".join(str(x) for x in v)


def serialize(rec: FamilyRecord) -> str:
    """Canonical text for a record (integer vectors, expression comments)."""
    out = ["[meta]", f"schema = {SCHEMA_VERSION}", f"id = {rec.id}"]
    if rec.name:
        out.append(f"name = {rec.name}")
    if rec.status != "complete":
        out.append(f"status = {rec.status}")
    if rec.reduces_to:
        out.append(f"reduces_to = {rec.reduces_to}")
    if rec.kx3 is not None:
        out.append(f"kx3 = {rec.kx3}")
    if rec.status == "reduction":
        _errata_lines(rec, out)
        return "\n".join(out) + "\n"
    cexp = lambda v: format_expr(tuple(v), rec.curve_basis_names)
    dexp = lambda v: format_expr(tuple(v), rec.divisor_basis_names)
    if rec.tau:
        out.append("tau = " + "; ".join(_ints(t) for t in rec.tau)
                   + "  # " + "; ".join(cexp(t) for t in rec.tau))
    if tuple(rec.window) != (2, 4):
        out.append(f"window = {_ints(rec.window)}")
    if rec.window_exceptions:
        out.append(f"window_exceptions = {_ints(i + 1 for i in rec.window_exceptions)}")
    out += ["", "[bases]", f"curve = {', '.join(rec.curve_basis_names)}",
            f"divisor = {', '.join(rec.divisor_basis_names)}"]
    for kind, nm, v in rec.aliases:
        names = rec.curve_basis_names if kind == "curve" else rec.divisor_basis_names
        out.append(f"alias = {kind} {nm}: {format_expr(v, names)}")
    out += ["", "[pairing]"]
    out += [_ints(row) for row in rec.pairing.matrix]
    out += ["", "[anticanonical]", f"{_ints(rec.anticanonical)}  # {dexp(rec.anticanonical)}"]
    out += ["", "[effective]"] + [f"{_ints(d)}  # {dexp(d)}" for d in rec.effective_generators]
    if rec.mori_generators:
        out += ["", "[mori]"] + [f"{_ints(c)}  # {cexp(c)}" for c in rec.mori_generators]
    out += ["", "[core]"] + [f"{_ints(c)}  # {i + 1}: {cexp(c)}" for i, c in enumerate(rec.core)]
    if rec.separating:
        out += ["", "[separating]", _ints(i + 1 for i in rec.separating)]
    if rec.relations:
        out += ["", "[relations]"] + [r.format() for r in rec.relations]
    if rec.witnesses is not None:
        out += ["", "[witnesses]", f"order = {_ints(i + 1 for i in rec.witnesses.order)}"]
        out += ["derive" if d is None else f"{_ints(d)}  # {dexp(d)}"
                for d in rec.witnesses.divisors]
    if rec.pseudosymmetries:
        out += ["", "[pseudosymmetry]"]
        for p in rec.pseudosymmetries:
            head = f"{p.name} {p.tag}" if p.tag else p.name
            out.append(f"{head} = " + "; ".join(_ints(r) for r in p.matrix))
    for title, items in (("extras", rec.extras), ("omissions", rec.omissions)):
        if items:
            out += ["", f"[{title}]"]
            for a in items:
                tail = f" | {a.reason}" if a.reason else ""
                out.append(f"{_ints(a.cls)}{tail}  # {cexp(a.cls)}")
    cf = rec.census
    cl = []
    for c in cf.c1_lines:
        cl.append(f"c1_line = {_ints(c)}  # {cexp(c)}")
    if cf.interior_conic is not None:
        cl.append(f"interior_conic = {_ints(cf.interior_conic)}  # {cexp(cf.interior_conic)}")
    for cone in cf.dp_cones:
        cl.append("dp_cone = " + "; ".join(_ints(g) for g in cone.generators))
    if cf.half_ksq is not None:
        cl.append(f"half_ksq = {_ints(cf.half_ksq)}  # {cexp(cf.half_ksq)}")
    if cf.requires_generality:
        cl.append("requires_generality = yes")
    for c in cf.aux:
        cl.append(f"aux = {_ints(c)}  # {cexp(c)}")
    if cl:
        out += ["", "[census]"] + cl
    _errata_lines(rec, out)
    return "\n".join(out) + "\n"


def _errata_lines(rec, out):
    if rec.errata:
        out += ["", "[errata]"] + [" | ".join(e) for e in rec.errata]


# -- loading ----------------------------------------------------------------

def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("data")


def list_families(directory=None) -> list:
    d = Path(directory) if directory is not None else data_dir()
    if not d.is_dir():
        return []
    return sorted((p.stem for p in d.glob("*.fam")), key=_label_key)


def _label_key(label):
    return tuple(int(x) if x.isdigit() else x for x in re.split(r"[.\-]", label))


_CACHE = {}


def load_family(fid: str, directory=None, check: bool = True) -> FamilyRecord:
    """Load and validate one family.  Unknown labels raise FamilyNotFound."""
    d = Path(directory) if directory is not None else data_dir()
    path = d / f"{fid}.fam"
    if not path.is_file():
        raise FamilyNotFound(fid)
    text = path.read_text(encoding="utf-8")
    key = (str(path), text, check)
    if key in _CACHE:
        return _CACHE[key]
    rec = parse_family(text, source=str(path.name))
    if rec.id != fid:
        raise DataError(f"file declares id {rec.id!r}", f"{fid}:meta.id")
    if check:
        validate(rec)
    _CACHE[key] = rec
    return rec


def validate(rec: FamilyRecord) -> None:
    """Check the record invariants; raise DataError naming the failing field."""
    if rec.is_reduction:
        return
    fid = rec.id
    lo, hi = rec.window
    for i, c in enumerate(rec.core):
        deg = rec.degree(c)
        if i in rec.window_exceptions:
            if not 2 <= deg <= 5:
                raise DataError(f"degree {deg} outside [2, 5]", f"{fid}:core[{i + 1}]")
        elif not lo <= deg <= hi:
            raise DataError(f"degree {deg} outside [{lo}, {hi}]", f"{fid}:core[{i + 1}]")
    if len(set(c.coords for c in rec.core)) != len(rec.core):
        raise DataError("duplicate core class", f"{fid}:core")
    for k, rel in enumerate(rec.relations):
        if not verify_relation(rec, rel):
            raise DataError(f"relation {rel.format()} does not hold", f"{fid}:relations[{k + 1}]")
    if rec.witnesses is not None and sorted(rec.witnesses.order) != list(range(len(rec.core))):
        raise DataError("order must list every core number once", f"{fid}:witnesses.order")
    nef = rec.nef_cone()
    for p in rec.pseudosymmetries:
        where = f"{fid}:pseudosymmetry.{p.name}"
        if la.det(p.matrix) not in (1, -1):
            raise DataError("matrix is not invertible over Z", where)
        for j in range(rec.rank):
            e = CurveClass.basis(rec.rank, j)
            if rec.degree(p.apply(e)) != rec.degree(e):
                raise DataError(f"does not preserve degree on basis vector {j + 1}", where)
        if not _maps_onto(p.matrix, nef):
            raise DataError("does not map the nef cone onto itself", where)
        if p.involution and la.matmul(p.matrix, p.matrix) != la.identity(rec.rank):
            raise DataError("declared involution does not square to the identity", where)
    for a in rec.extras + rec.omissions:
        if not nef.contains(a.cls.coords):
            raise DataError(f"class {rec.format_curve(a.cls)} is not nef", f"{fid}:extras/omissions")


def _maps_onto(matrix, cone):
    images = [la.matvec(matrix, g) for g in cone.generators]
    if not all(cone.contains(v) for v in images):
        return False
    image_cone = RationalCone(images, dim=cone.dim)
    return all(image_cone.contains(g) for g in cone.generators)


# -- blow-up numerics -------------------------------------------------------

def blowup_invariants(kY3: int, b3Y: int, degC: int, genusC: int) -> tuple:
    """(-K)^3 and b_3 after blowing up a smooth curve.

    ``degC`` is the anticanonical degree -K_Y . C of the centre, ``genusC``
    its genus.
    """
    if degC < 0 or genusC < 0:
        raise ValueError("degree and genus must be nonnegative")
    return kY3 - 2 * (degC - genusC + 1), b3Y + 2 * genusC

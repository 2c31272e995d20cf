"""Polytope file formats: a small JSON schema and a vertices-only OFF reader."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .polytope import Polytope, from_halfspaces, from_vertices


class ParseError(ValueError):
    """Malformed input file; the message names the offending field or line."""


@dataclass
class PolytopeFile:
    dim: int
    vertices: list[list[float]] | None = None
    halfspaces: list[dict] | None = None
    name: str | None = None

    def build(self) -> Polytope:
        if self.vertices is not None:
            return from_vertices(self.dim, np.asarray(self.vertices, dtype=np.float64), name=self.name)
        return from_halfspaces(self.dim, self.halfspaces, name=self.name)

    def to_dict(self) -> dict:
        out: dict = {"dim": self.dim}
        if self.name is not None:
            out["name"] = self.name
        if self.vertices is not None:
            out["vertices"] = self.vertices
        if self.halfspaces is not None:
            out["halfspaces"] = self.halfspaces
        return out

    @classmethod
    def from_polytope(cls, P: Polytope) -> "PolytopeFile":
        return cls(P.dim, [[float(c) for c in v] for v in P.vertices], name=P.name)


def _finite_row(row, where: str, dim: int) -> list[float]:
    if not isinstance(row, (list, tuple)) or len(row) != dim:
        raise ParseError(f"{where}: expected a list of {dim} numbers")
    out = []
    for j, c in enumerate(row):
        if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
            raise ParseError(f"{where}[{j}]: not a finite number: {c!r}")
        out.append(float(c))
    return out


def parse_polytope_dict(data) -> PolytopeFile:
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 2:
        raise ParseError(f"dim: expected an integer >= 2, got {dim!r}")
    verts, hs = data.get("vertices"), data.get("halfspaces")
    if verts is None and hs is None:
        raise ParseError("need at least one of 'vertices' or 'halfspaces'")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name: expected a string")
    if verts is not None:
        if not isinstance(verts, list):
            raise ParseError("vertices: expected a list")
        verts = [_finite_row(v, f"vertices[{i}]", dim) for i, v in enumerate(verts)]
    if hs is not None:
        if not isinstance(hs, list):
            raise ParseError("halfspaces: expected a list")
        clean = []
        for i, h in enumerate(hs):
            if not isinstance(h, dict) or "normal" not in h or "offset" not in h:
                raise ParseError(f"halfspaces[{i}]: expected an object with 'normal' and 'offset'")
            nrm = _finite_row(h["normal"], f"halfspaces[{i}].normal", dim)
            off = _finite_row([h["offset"]], f"halfspaces[{i}].offset", 1)[0]
            clean.append({"normal": nrm, "offset": off})
        hs = clean
    return PolytopeFile(dim, verts, hs, name)


def parse_off(text: str) -> PolytopeFile:
    """Vertices of a 3-d OFF file; face records are ignored (the hull is recomputed)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines or not lines[0][1].startswith("OFF"):
        raise ParseError("line 1: missing OFF header")
    head_rest = lines[0][1][3:].split()
    rest = lines[1:]
    if not head_rest:
        if not rest:
            raise ParseError("missing vertex/face counts")
        (ln, cnt), rest = rest[0], rest[1:]
        head_rest = cnt.split()
    else:
        ln = lines[0][0]
    try:
        nv = int(head_rest[0])
    except (ValueError, IndexError):
        raise ParseError(f"line {ln}: bad counts line") from None
    if len(rest) < nv:
        raise ParseError(f"expected {nv} vertex lines, found {len(rest)}")
    verts = []
    for ln, body in rest[:nv]:
        parts = body.split()
        try:
            xyz = [float(p) for p in parts[:3]]
        except ValueError:
            raise ParseError(f"line {ln}: vertex coordinates must be numbers") from None
        if len(xyz) != 3 or not all(math.isfinite(c) for c in xyz):
            raise ParseError(f"line {ln}: expected three finite coordinates")
        verts.append(xyz)
    return PolytopeFile(3, verts, None, None)


def load_polytope_file(path: str | Path) -> PolytopeFile:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".off":
        pf = parse_off(text)
        pf.name = path.stem
        return pf
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_polytope_dict(data)


def load_polytope(path: str | Path) -> Polytope:
    return load_polytope_file(path).build()

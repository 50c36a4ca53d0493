"""Quivers: weighted labeled digraphs with frozen flags and face labels.

Edge weights sigma(v,w) are stored doubled (``sigma2 = 2*sigma``) so
half-integral weights between frozen vertices stay exact integers.  The
auxiliary quantity ``epsilon(v,w) = d_w/gcd(d_v,d_w) * sigma(v,w)`` drives
mutation and the coordinate exchange rules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Optional

FACES = ("edge01", "edge12", "edge02", "interior")


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    name: str
    d: int
    frozen: bool
    face: Optional[str] = None
    grid: Optional[tuple] = None

    def __post_init__(self):
        if self.d <= 0:
            raise QuiverError(f"vertex weight must be positive: {self.name}")
        if self.face is not None and self.face not in FACES:
            raise QuiverError(f"bad face label {self.face!r}")


class Quiver:
    """Value-semantic quiver; mutation returns a new instance."""

    def __init__(self, vertices=(), edges=None):
        self.vertices: dict[str, Vertex] = {}
        for v in vertices:
            self.add_vertex(v)
        # canonical key (a, b) with a < b; value sigma2(a -> b)
        self._edges: dict[tuple, int] = {}
        if edges:
            for (a, b), s2 in edges.items():
                self.set_sigma2(a, b, s2)

    # -- construction ---------------------------------------------------
    def add_vertex(self, v: Vertex):
        if v.name in self.vertices:
            raise QuiverError(f"duplicate vertex {v.name}")
        self.vertices[v.name] = v

    def set_sigma2(self, a: str, b: str, s2: int):
        if a == b:
            raise QuiverError("no self-edges")
        if a not in self.vertices or b not in self.vertices:
            raise QuiverError(f"unknown endpoint in edge {a} -> {b}")
        key, val = ((a, b), s2) if a < b else ((b, a), -s2)
        if val == 0:
            self._edges.pop(key, None)
        else:
            self._edges[key] = val

    def add_sigma2(self, a: str, b: str, s2: int):
        self.set_sigma2(a, b, self.sigma2(a, b) + s2)

    def copy(self) -> "Quiver":
        q = Quiver()
        q.vertices = dict(self.vertices)
        q._edges = dict(self._edges)
        return q

    # -- queries ----------------------------------------------------------
    def sigma2(self, a: str, b: str) -> int:
        if a < b:
            return self._edges.get((a, b), 0)
        return -self._edges.get((b, a), 0)

    def epsilon2(self, a: str, b: str) -> int:
        da, db = self.vertices[a].d, self.vertices[b].d
        return db // gcd(da, db) * self.sigma2(a, b)

    def epsilon(self, a: str, b: str) -> int:
        e2 = self.epsilon2(a, b)
        if e2 % 2:
            raise QuiverError(f"epsilon({a},{b}) is not integral")
        return e2 // 2

    def neighbors(self, name: str):
        out = []
        for (a, b) in self._edges:
            if a == name:
                out.append(b)
            elif b == name:
                out.append(a)
        return out

    def edge_items(self):
        """Sorted (a, b, sigma2) triples, a < b."""
        return [(a, b, s2) for (a, b), s2 in sorted(self._edges.items())]

    @property
    def names(self):
        return sorted(self.vertices)

    def mutable_names(self):
        return sorted(n for n, v in self.vertices.items() if not v.frozen)

    def frozen_names(self):
        return sorted(n for n, v in self.vertices.items() if v.frozen)

    def face_names(self, face: str):
        return sorted(n for n, v in self.vertices.items() if v.face == face)

    def check_invariants(self):
        for (a, b), s2 in self._edges.items():
            va, vb = self.vertices[a], self.vertices[b]
            if s2 % 2 and not (va.frozen and vb.frozen):
                raise QuiverError(f"half-integral edge {a}--{b} with mutable endpoint")
            if not va.frozen or not vb.frozen:
                if self.epsilon2(a, b) % 2 or self.epsilon2(b, a) % 2:
                    raise QuiverError(f"non-integral epsilon on {a}--{b}")

    # -- mutation --------------------------------------------------------
    def mutate(self, name: str) -> "Quiver":
        v = self.vertices.get(name)
        if v is None:
            raise QuiverError(f"no vertex {name}")
        if v.frozen:
            raise QuiverError(f"cannot mutate frozen vertex {name}")
        nbrs = self.neighbors(name)
        eps_in = {}   # integral epsilon(x, v)
        eps2_out = {}  # doubled epsilon(v, y)
        for x in nbrs:
            e2 = self.epsilon2(x, name)
            if e2 % 2:
                raise QuiverError(f"epsilon({x},{name}) not integral")
            eps_in[x] = e2 // 2
            eps2_out[x] = self.epsilon2(name, x)
        q = self.copy()
        for x in nbrs:
            for y in nbrs:
                if x == y:
                    continue
                prod = eps_in[x] * eps2_out[y]
                if prod > 0:
                    e2_new = self.epsilon2(x, y) + abs(eps_in[x]) * eps2_out[y]
                    dx, dy = self.vertices[x].d, self.vertices[y].d
                    g = gcd(dx, dy)
                    num = e2_new * g
                    if num % dy:
                        raise QuiverError(f"mutation broke sigma integrality on {x}--{y}")
                    q.set_sigma2(x, y, num // dy)
        for x in nbrs:
            q.set_sigma2(name, x, -self.sigma2(name, x))
        return q

    def apply_sequence(self, seq) -> "Quiver":
        q = self
        for name in seq:
            q = q.mutate(name)
        return q

    # -- comparison --------------------------------------------------------
    def labeled_equal(self, other: "Quiver", relabel=None):
        """Exact comparison; returns (equal, first-difference report)."""
        ren = (lambda n: relabel.get(n, n)) if relabel else (lambda n: n)
        mine = {ren(n): v for n, v in self.vertices.items()}
        if set(mine) != set(other.vertices):
            missing = set(other.vertices) - set(mine)
            extra = set(mine) - set(other.vertices)
            return False, f"vertex sets differ: missing={sorted(missing)} extra={sorted(extra)}"
        for n, v in sorted(mine.items()):
            w = other.vertices[n]
            if (v.d, v.frozen, v.face) != (w.d, w.frozen, w.face):
                return False, (
                    f"vertex {n}: (d, frozen, face) = "
                    f"{(v.d, v.frozen, v.face)} vs {(w.d, w.frozen, w.face)}"
                )
        mine_edges = {}
        for (a, b), s2 in self._edges.items():
            ra, rb = ren(a), ren(b)
            key, val = ((ra, rb), s2) if ra < rb else ((rb, ra), -s2)
            mine_edges[key] = val
        theirs = dict(other._edges)
        for key in sorted(set(mine_edges) | set(theirs)):
            s_mine = mine_edges.get(key, 0)
            s_their = theirs.get(key, 0)
            if s_mine != s_their:
                return False, f"edge {key}: sigma2 {s_mine} vs {s_their}"
        return True, ""

    # -- serialization -----------------------------------------------------
    def to_json_dict(self, type_name: str = ""):
        return {
            "type": type_name,
            "vertices": [
                {
                    "name": v.name,
                    "d": v.d,
                    "frozen": v.frozen,
                    "face": v.face,
                    "grid": list(v.grid) if v.grid is not None else None,
                }
                for _, v in sorted(self.vertices.items())
            ],
            "edges": [
                {"from": a, "to": b, "sigma2": s2} for a, b, s2 in self.edge_items()
            ],
        }

    def to_json(self, type_name: str = "") -> str:
        return json.dumps(self.to_json_dict(type_name), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data) -> "Quiver":
        q = cls()
        for rec in data["vertices"]:
            grid = tuple(rec["grid"]) if rec.get("grid") is not None else None
            q.add_vertex(
                Vertex(rec["name"], rec["d"], rec["frozen"], rec.get("face"), grid)
            )
        for rec in data["edges"]:
            q.set_sigma2(rec["from"], rec["to"], rec["sigma2"])
        return q

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        return cls.from_json_dict(json.loads(text))

    def to_dot(self, type_name: str = "") -> str:
        lines = [f'digraph "{type_name or "Q"}" {{']
        for n in self.names:
            v = self.vertices[n]
            attrs = [f'width="{0.3 + 0.15 * v.d:.2f}"']
            if v.frozen:
                attrs.append('style="filled"')
                attrs.append('fillcolor="lightblue"')
            lines.append(f'  "{n}" [{", ".join(attrs)}];')
        for a, b, s2 in self.edge_items():
            src, dst, w2 = (a, b, s2) if s2 > 0 else (b, a, -s2)
            attrs = []
            if w2 % 2 or abs(w2) == 1:
                attrs.append('style="dashed"')
            if abs(w2) > 2:
                attrs.append(f'label="{abs(w2)}/2"' if w2 % 2 else f'label="{abs(w2)//2}"')
            suffix = f' [{", ".join(attrs)}]' if attrs else ""
            lines.append(f'  "{a if s2 > 0 else b}" -> "{b if s2 > 0 else a}"{suffix};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_tikz(self, type_name: str = "") -> str:
        """Best-effort TikZ sketch using grid coordinates when present."""
        lines = ["\\begin{tikzpicture}"]
        fallback = 0
        pos = {}
        for n in self.names:
            v = self.vertices[n]
            if v.grid is not None:
                x, y = float(v.grid[1]), -float(v.grid[0])
            else:
                x, y = float(fallback), 1.0
                fallback += 1
            pos[n] = (x, y)
            style = "fill=blue!20" if v.frozen else "draw"
            size = 2 + v.d
            label = n.replace("_", "")
            lines.append(
                f"  \\node[circle,{style},inner sep={size}pt] ({label}) at ({x:.1f},{y:.1f}) {{}};"
            )
        for a, b, s2 in self.edge_items():
            src, dst = (a, b) if s2 > 0 else (b, a)
            style = "dashed" if s2 % 2 or abs(s2) == 1 else "->"
            lines.append(
                f"  \\draw[{style}] ({src.replace('_', '')}) -- ({dst.replace('_', '')});"
            )
        lines.append("\\end{tikzpicture}")
        return "\n".join(lines) + "\n"


def glue(q1: Quiver, face1: str, q2: Quiver, face2: str, pair_map, names1, names2,
         glued_face: str = "interior", glued_frozen: bool = False):
    """Identify face1-vertices of q1 with face2-vertices of q2.

    ``pair_map`` maps q1 face-vertex names to q2 face-vertex names.
    ``names1``/``names2`` rename the surviving vertices of each copy;
    paired vertices use the name from ``names1`` of the q1 member.
    Edge weights add on identification; zero edges disappear.
    """
    for a, b in pair_map.items():
        va, vb = q1.vertices[a], q2.vertices[b]
        if va.face != face1 or vb.face != face2:
            raise QuiverError(f"pairing {a}->{b} not on faces {face1}/{face2}")
        if va.d != vb.d:
            raise QuiverError(f"weight mismatch on glued pair {a}/{b}")
    if set(pair_map) != set(q1.face_names(face1)) or set(pair_map.values()) != set(
        q2.face_names(face2)
    ):
        raise QuiverError("pairing must cover both faces")

    out = Quiver()
    final1 = {}
    for n, v in q1.vertices.items():
        if n in pair_map:
            final1[n] = names1[n]
        else:
            final1[n] = names1[n]
    final2 = {}
    for n, v in q2.vertices.items():
        if n in set(pair_map.values()):
            inv = {b: a for a, b in pair_map.items()}
            final2[n] = final1[inv[n]]
        else:
            final2[n] = names2[n]

    for n, v in q1.vertices.items():
        glued = n in pair_map
        out.add_vertex(
            Vertex(
                final1[n],
                v.d,
                glued_frozen if glued else v.frozen,
                glued_face if glued else v.face,
                v.grid,
            )
        )
    for n, v in q2.vertices.items():
        if final2[n] in out.vertices:
            continue
        out.add_vertex(Vertex(final2[n], v.d, v.frozen, v.face, v.grid))
    for a, b, s2 in q1.edge_items():
        out.add_sigma2(final1[a], final1[b], s2)
    for a, b, s2 in q2.edge_items():
        out.add_sigma2(final2[a], final2[b], s2)
    return out


def inscribe_on_triangulation(q: Quiver, n_triangles: int, edge_pairings):
    """Disjoint copies of a triangular quiver glued along paired edges.

    ``edge_pairings`` lists ((t1, face1), (t2, face2)); each (triangle, face)
    may appear at most once.  Unpaired boundary face vertices stay frozen.
    """
    used = set()
    for (t1, f1), (t2, f2) in edge_pairings:
        for key in ((t1, f1), (t2, f2)):
            if key in used:
                raise QuiverError(f"face {key} paired twice")
            used.add(key)
        if not (0 <= t1 < n_triangles and 0 <= t2 < n_triangles):
            raise QuiverError("triangle index out of range")
        if (t1, f1) == (t2, f2):
            raise QuiverError("cannot pair a face with itself")

    out = Quiver()
    # canonical copy names: t<k>.<name>
    def cname(t, n):
        return f"t{t}.{n}"

    for t in range(n_triangles):
        for n, v in q.vertices.items():
            out.add_vertex(Vertex(cname(t, n), v.d, v.frozen, v.face, v.grid))
    for t in range(n_triangles):
        for a, b, s2 in q.edge_items():
            out.add_sigma2(cname(t, a), cname(t, b), s2)

    # union-find over identified vertices
    parent = {n: n for n in out.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    def index_of(name):
        return name.rsplit("_", 1)[1]

    merged_mutable = set()
    for (t1, f1), (t2, f2) in edge_pairings:
        side1 = {index_of(n): n for n in q.face_names(f1)}
        side2 = {index_of(n): n for n in q.face_names(f2)}
        if set(side1) != set(side2):
            raise QuiverError(f"faces {f1}/{f2} have mismatched vertex indices")
        for idx, n1 in side1.items():
            a, b = cname(t1, n1), cname(t2, side2[idx])
            if out.vertices[a].d != out.vertices[b].d:
                raise QuiverError("weight mismatch in pairing")
            union(a, b)
            merged_mutable.add(find(a))

    result = Quiver()
    reps = {}
    for n in out.names:
        r = find(n)
        if r not in reps:
            v = out.vertices[r]
            frozen = v.frozen and find(r) not in merged_mutable
            result.add_vertex(Vertex(r, v.d, frozen, v.face, v.grid))
            reps[r] = True
    for a, b, s2 in out.edge_items():
        ra, rb = find(a), find(b)
        if ra != rb:
            result.add_sigma2(ra, rb, s2)
    return result

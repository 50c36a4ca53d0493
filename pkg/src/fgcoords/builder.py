"""Construction of the triangular quivers and their mutation sequences.

Sign conventions below (module constants) are pinned by the worked C_2
mutation example, the half-Dynkin edge conditions, and the order-3
rotation test; see the test suite.
"""

from __future__ import annotations

from math import gcd

from .quiver import Quiver, QuiverError, Vertex, glue
from .rootsys import (
    DynkinOrientation,
    LieType,
    OddCoxeterError,
    RootDatum,
    default_orientation,
    longest_word,
    orientations_for,
)

# sigma(i, j) on the initial Dynkin copy when i precedes j in c
SIGN_INIT = -1
# sigma(new, frontier_other) = SIGN_CROSS * sigma(f_k, f_other)
SIGN_CROSS = -1
# sigma(new, old frontier vertex of the same row)
SIGN_NEWOLD = -1


def vname(i: int, j: int, letter: str = "v") -> str:
    return f"{letter}_{i}_{j}"


def parse_name(name: str):
    parts = name.split("_")
    if len(parts) == 3:
        return parts[0], int(parts[1]), int(parts[2])
    if len(parts) == 2:
        return parts[0], int(parts[1]), None
    raise QuiverError(f"unparsable vertex name {name!r}")


# ---------------------------------------------------------------------------
# rectangle construction
# ---------------------------------------------------------------------------

def build_q0(orient: DynkinOrientation, offset: int = 0, snapshots=None) -> Quiver:
    """The double-Bruhat-cell rectangle: frontier algorithm over c^(h/2).

    ``offset`` shifts row labels (for product factors).  If ``snapshots``
    is a dict mapping letter counts to lists, structural copies of the
    in-progress quiver are appended there.
    """
    word = longest_word(orient)
    datum = orient.datum
    rank = orient.rank
    half = orient.coxeter_number // 2

    q = Quiver()
    frontier = {}
    col = {}
    for i in range(1, rank + 1):
        name = vname(offset + i, 0)
        q.add_vertex(Vertex(name, datum.weights[i - 1], False, None, (offset + i, 0)))
        frontier[i] = name
        col[i] = 0
    pos = {i: orient.position_in_cox(i) for i in range(1, rank + 1)}
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            if datum.adjacent(i, j):
                s = SIGN_INIT if pos[i] < pos[j] else -SIGN_INIT
                q.set_sigma2(frontier[i], frontier[j], 2 * s)

    if snapshots is not None and 0 in snapshots:
        snapshots[0] = q.copy()

    for step, k in enumerate(word, start=1):
        jprime = col[k] + 1
        new = vname(offset + k, jprime)
        q.add_vertex(
            Vertex(new, datum.weights[k - 1], False, None, (offset + k, jprime))
        )
        for l in range(1, rank + 1):
            if l == k:
                continue
            s2 = q.sigma2(frontier[k], frontier[l])
            if s2:
                q.set_sigma2(new, frontier[l], SIGN_CROSS * s2)
        q.set_sigma2(new, frontier[k], SIGN_NEWOLD * 2)
        frontier[k] = new
        col[k] = jprime
        if snapshots is not None and step in snapshots:
            snapshots[step] = q.copy()

    renames = {}
    for i in range(1, rank + 1):
        renames[vname(offset + i, 0)] = f"C_{offset + i}"
        renames[vname(offset + i, half)] = f"B_{offset + i}"
    out = Quiver()
    for name, v in q.vertices.items():
        nn = renames.get(name, name)
        frozen = nn.startswith(("B_", "C_"))
        face = "edge12" if nn.startswith("B_") else "edge02" if nn.startswith("C_") else "interior"
        out.add_vertex(Vertex(nn, v.d, frozen, face, v.grid))
    for a, b, s2 in q.edge_items():
        na, nb = renames.get(a, a), renames.get(b, b)
        both_b = na.startswith("B_") and nb.startswith("B_")
        both_c = na.startswith("C_") and nb.startswith("C_")
        if both_b or both_c:
            if s2 % 2:
                raise QuiverError("cannot halve an odd doubled weight")
            s2 //= 2
        out.set_sigma2(na, nb, s2)
    out.check_invariants()
    return out


def _relabel_phi(name: str, offset: int, rank: int, inverse: bool) -> str:
    """phi: v -> v, A -> C, B -> A, C -> B (inverse: A->B, B->C, C->A)."""
    if name.startswith("v_"):
        return name
    letter, idx, _ = parse_name(name)
    fwd = {"A": "C", "B": "A", "C": "B"}
    bwd = {"A": "B", "B": "C", "C": "A"}
    table = bwd if inverse else fwd
    return f"{table[letter]}_{idx}"


def build_q1(orient: DynkinOrientation, offset: int = 0) -> Quiver:
    """Q_0 plus an isolated frozen A row on face edge01."""
    q = build_q0(orient, offset)
    datum = orient.datum
    for i in range(1, orient.rank + 1):
        q.add_vertex(
            Vertex(f"A_{offset + i}", datum.weights[i - 1], True, "edge01", (0, offset + i))
        )
    return q


def build_q(orient: DynkinOrientation, offset: int = 0) -> Quiver:
    """The triangular quiver: merge of Q_1 with its two twisted rotations.

    Overlapping edges of the three copies always agree in weight, so the
    merge collapses equal contributions (and keeps distinct ones additive).
    """
    q1 = build_q1(orient, offset)
    rot = murot_components(orient, offset)["rotTw"]
    q1p = q1.apply_sequence(rot)
    q1pp = q1.apply_sequence(list(reversed(rot)))

    out = Quiver()
    for name, v in q1.vertices.items():
        out.add_vertex(v)
    rank = orient.rank
    contrib: dict[tuple, set] = {}

    def record(a, b, s2):
        key, val = ((a, b), s2) if a < b else ((b, a), -s2)
        contrib.setdefault(key, set()).add(val)

    for a, b, s2 in q1.edge_items():
        record(a, b, s2)
    # sigma_{phi^{-1}(Q1')}(v, w) = sigma_{Q1'}(phi v, phi w): push Q1' edges
    # through phi^{-1} (names move A->B, B->C, C->A); dually for phi(Q1'').
    for src, inverse in ((q1p, True), (q1pp, False)):
        for a, b, s2 in src.edge_items():
            record(
                _relabel_phi(a, offset, rank, inverse=inverse),
                _relabel_phi(b, offset, rank, inverse=inverse),
                s2,
            )
    faces = {"A": "edge01", "B": "edge12", "C": "edge02", "v": "interior"}
    for (a, b), vals in contrib.items():
        s2 = sum(vals)
        if s2:
            out.set_sigma2(a, b, s2)
    out.check_invariants()
    return out


# ---------------------------------------------------------------------------
# mutation sequence generators (rectangle types)
# ---------------------------------------------------------------------------

def _col_tokens(orient, j: int, offset: int, letter: str = "v", reverse: bool = False):
    parts = orient.partitions
    order = list(reversed(parts)) if reverse else parts
    return [vname(offset + z, j, letter) for part in order for z in part]


def _rs_tokens(orient, part, a: int, b: int, offset: int, letter: str = "v"):
    """The row-permutation pattern over columns a..b; empty when b <= a."""
    if b <= a:
        return []
    toks = []
    span = b - a
    for k in range(0, span + 1):
        for j in range(0, span - k + 1):
            toks.extend(vname(offset + z, a + j, letter) for z in part)
    for j in range(0, span + 1):
        toks.extend(vname(offset + z, b - j, letter) for z in part)
    return toks


def murot_components(orient: DynkinOrientation, offset: int = 0):
    """The rotation sequence and its named components."""
    ell = orient.ell
    comps = {}
    rotTw = []
    for x in range(1, ell + 1):
        for y in range(x, 0, -1):
            rotTw.extend(_col_tokens(orient, y, offset))
    comps["rotTw"] = rotTw
    o2 = []
    sig = orient.datum.sigma
    if any(sig[i] != i + 1 for i in range(orient.rank)):
        for j in range(1, ell + 1):
            for _ in range(ell + 2):
                o2.extend(_col_tokens(orient, j, offset))
    comps["O2"] = o2
    o1 = []
    for part in orient.partitions:
        o1.extend(_rs_tokens(orient, part, 1, ell, offset))
    comps["O1"] = o1
    comps["rot"] = rotTw + o2 + o1
    comps["CS"] = {
        j: [t for _ in range(ell + 2) for t in _col_tokens(orient, j, offset)]
        for j in range(1, ell + 1)
    }
    comps["RS"] = {
        tuple(part): _rs_tokens(orient, part, 1, ell, offset)
        for part in orient.partitions
    }
    return comps


def muflip_components(orient: DynkinOrientation, offset: int = 0):
    """The flip sequence on the doubled quiver and its named components."""
    ell = orient.ell
    L = 2 * ell + 1
    comps = {}

    p = []
    for lmap in (lambda j: L + 1 - j, lambda j: ell + 1 - j):
        for x in range(1, ell + 1):
            for y in range(x, 0, -1):
                col = lmap(y)
                p.extend(_col_tokens(orient, col, offset, "w", reverse=True))
    comps["P"] = p

    core = []
    for i in range(1, L + 1):
        for j in range(L, i - 1, -1):
            core.extend(_col_tokens(orient, j, offset, "w"))
    comps["Flipcore"] = core

    def rs_block(a, b):
        toks = []
        for part in reversed(orient.partitions):
            toks.extend(_rs_tokens(orient, part, a, b, offset, "w"))
        return toks

    comps["O3"] = rs_block(1, L)
    comps["O4"] = rs_block(ell + 2, L)
    comps["O5"] = rs_block(1, ell)
    comps["flipTw"] = comps["P"] + comps["Flipcore"]
    comps["flip"] = (
        comps["P"] + comps["Flipcore"] + comps["O3"] + comps["O4"] + comps["O5"]
    )
    return comps


# ---------------------------------------------------------------------------
# lattice construction for series A
# ---------------------------------------------------------------------------

def an_build(n: int) -> Quiver:
    """The triangular-lattice quiver for A_n; all weights 1."""
    pos = {}
    for i in range(1, n + 1):
        pos[f"A_{i}"] = (0, i)
        pos[f"B_{i}"] = (i, n + 1 - i)
        pos[f"C_{i}"] = (i, 0)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            pos[vname(i, j)] = (i, j)

    q = Quiver()
    for name, (i, j) in pos.items():
        frozen = not name.startswith("v_")
        face = (
            "edge01" if name.startswith("A_") else
            "edge12" if name.startswith("B_") else
            "edge02" if name.startswith("C_") else "interior"
        )
        q.add_vertex(Vertex(name, 1, frozen, face, (i, j)))

    def half(a, b):
        return pos and a[0] == b[0] and False

    names = list(pos)
    for a in names:
        ia, ja = pos[a]
        for b in names:
            if a == b:
                continue
            ib, jb = pos[b]
            arrow = (
                (ib == ia + 1 and jb == ja)
                or (ib == ia - 1 and jb == ja + 1)
                or (ib == ia and jb == ja - 1)
            )
            if arrow:
                same_letter = a[0] == b[0] and not a.startswith("v_")
                s2 = 1 if same_letter else 2
                q.set_sigma2(a, b, s2)
    q.check_invariants()
    return q


def an_flip(n: int, offset: int = 0):
    """The diamond flip sequence on the doubled lattice quiver."""
    toks = []
    for ell in range(1, n + 1):
        for k in range(1, ell + 1):
            t = min(k, ell + 1 - k)
            for j in range(0, n - ell + 1):
                toks.append(vname(offset + t + j, 2 * k + n - (ell + 1), "w"))
    return toks


def an_q02(n: int) -> Quiver:
    """Two lattice copies glued along C(left) = A(right) into a diamond."""
    q = an_build(n)
    left_names = {}
    right_names = {}
    for name in q.names:
        letter, i, j = parse_name(name)
        if letter == "v":
            left_names[name] = vname(i, j + n, "w")
            right_names[name] = vname(j, n - i, "w")
        elif letter == "A":
            left_names[name] = f"D_{i}"
            right_names[name] = vname(i, n, "w")
        elif letter == "B":
            left_names[name] = f"E_{i}"
            right_names[name] = f"F_{i}"
        else:  # C
            left_names[name] = vname(i, n, "w")
            right_names[name] = f"G_{i}"
    pair = {f"C_{i}": f"A_{i}" for i in range(1, n + 1)}
    return glue(q, "edge02", q, "edge01", pair, left_names, right_names)


def an_q13(n: int) -> Quiver:
    """Two lattice copies glued along C(left) = B(right)."""
    q = an_build(n)
    left_names = {}
    right_names = {}
    for name in q.names:
        letter, i, j = parse_name(name)
        if letter == "v":
            left_names[name] = vname(i, j + n, "w")
            right_names[name] = vname(n + 1 - i - j, n - j, "w")
        elif letter == "A":
            left_names[name] = f"E_{i}"
            right_names[name] = f"D_{i}"
        elif letter == "B":
            left_names[name] = f"F_{i}"
            right_names[name] = vname(i, n, "w")
        else:  # C
            left_names[name] = vname(i, n, "w")
            right_names[name] = f"G_{i}"
    pair = {f"C_{i}": f"B_{i}" for i in range(1, n + 1)}
    return glue(q, "edge02", q, "edge12", pair, left_names, right_names)


# ---------------------------------------------------------------------------
# doubled quivers for rectangle types
# ---------------------------------------------------------------------------

def _rect_names(orient, offset, side: str):
    """Renaming of one rectangle copy into the doubled-quiver w grid."""
    ell = orient.ell
    L = 2 * ell + 1
    rank = orient.rank
    names = {}
    for i in range(1, rank + 1):
        ii = offset + i
        if side == "left":
            names[f"A_{ii}"] = f"D_{ii}"
            names[f"B_{ii}"] = f"E_{ii}"
            names[f"C_{ii}"] = vname(ii, ell + 1, "w")
        else:
            names[f"A_{ii}"] = vname(ii, ell + 1, "w")
            names[f"B_{ii}"] = f"F_{ii}"
            names[f"C_{ii}"] = f"G_{ii}"
        for j in range(1, ell + 1):
            if side == "left":
                names[vname(ii, j)] = vname(ii, L + 1 - j, "w")
            else:
                names[vname(ii, j)] = vname(ii, ell + 1 - j, "w")
    return names


def rect_q02(orient: DynkinOrientation, offset: int = 0) -> Quiver:
    q = build_q(orient, offset)
    left = _rect_names(orient, offset, "left")
    right = _rect_names(orient, offset, "right")
    pair = {f"C_{offset + i}": f"A_{offset + i}" for i in range(1, orient.rank + 1)}
    return glue(q, "edge02", q, "edge01", pair, left, right)


def rect_q13(orient: DynkinOrientation, offset: int = 0) -> Quiver:
    q = build_q(orient, offset)
    ell = orient.ell
    L = 2 * ell + 1
    rank = orient.rank
    left = {}
    right = {}
    for i in range(1, rank + 1):
        ii = offset + i
        left[f"A_{ii}"] = f"E_{ii}"
        left[f"B_{ii}"] = f"F_{ii}"
        left[f"C_{ii}"] = vname(ii, ell + 1, "w")
        right[f"A_{ii}"] = f"D_{ii}"
        right[f"B_{ii}"] = vname(ii, ell + 1, "w")
        right[f"C_{ii}"] = f"G_{ii}"
        for j in range(1, ell + 1):
            left[vname(ii, j)] = vname(ii, L + 1 - j, "w")
            right[vname(ii, j)] = vname(ii, ell + 1 - j, "w")
    pair = {f"C_{offset + i}": f"B_{offset + i}" for i in range(1, rank + 1)}
    return glue(q, "edge02", q, "edge12", pair, left, right)


def amalgamate(qleft: Quiver, qright: Quiver, mode: str) -> Quiver:
    """Glue two triangular quivers: mode 02 joins edge02(left) to
    edge01(right); mode 13 joins edge02(left) to edge12(right)."""
    if mode not in ("02", "13"):
        raise QuiverError(f"unknown amalgamation mode {mode!r}")
    face_r = "edge01" if mode == "02" else "edge12"
    lefts = qleft.face_names("edge02")
    rights = qright.face_names(face_r)

    def index_of(n):
        return parse_name(n)[1]

    if sorted(index_of(n) for n in lefts) != sorted(index_of(n) for n in rights):
        raise QuiverError("glued faces have mismatched Dynkin indices")
    pair = {}
    by_idx = {index_of(n): n for n in rights}
    for n in lefts:
        pair[n] = by_idx[index_of(n)]
    left_names = {}
    right_names = {}
    for n in qleft.names:
        left_names[n] = n if n in pair else f"L.{n}"
    for n in qright.names:
        right_names[n] = n if n in pair.values() else f"R.{n}"
    for n in pair:
        left_names[n] = f"glued.{index_of(n)}"
    return glue(qleft, "edge02", qright, face_r, pair, left_names, right_names)


# ---------------------------------------------------------------------------
# top-level per-type entry points (handle products and the A_n special case)
# ---------------------------------------------------------------------------

def _is_a_type(t: LieType) -> bool:
    return t.is_simple and t.factors[0].series == "A"


def _use_lattice(t: LieType) -> bool:
    """The lattice path is forced when any A factor has odd rank... no:
    the rectangle works whenever h is even, i.e. every A factor has odd rank."""
    return any(f.series == "A" and f.rank % 2 == 0 for f in t.factors)


def build_quiver(t: LieType, lattice: bool = False) -> Quiver:
    """The triangular quiver for a (possibly product) type."""
    if lattice:
        if not _is_a_type(t):
            raise QuiverError("lattice construction applies to simple A types")
        return an_build(t.factors[0].rank)
    if _use_lattice(t):
        if t.is_simple:
            return an_build(t.factors[0].rank)
        raise OddCoxeterError(
            "product contains an even-rank A factor; build factors separately"
        )
    out = Quiver()
    for off, orient in orientations_for(t):
        part = build_q(orient, off)
        for _, v in part.vertices.items():
            out.add_vertex(v)
        for a, b, s2 in part.edge_items():
            out.set_sigma2(a, b, s2)
    return out


def murot(t: LieType, lattice: bool = False):
    if lattice or _use_lattice(t):
        if not (t.is_simple and _is_a_type(t)) and _use_lattice(t):
            raise OddCoxeterError("even-rank A factor: lattice rotation is empty per factor")
        return []
    toks = []
    for off, orient in orientations_for(t):
        toks.extend(murot_components(orient, off)["rot"])
    return toks


def muflip(t: LieType, lattice: bool = False):
    if lattice:
        return an_flip(t.factors[0].rank)
    if _use_lattice(t):
        if t.is_simple:
            return an_flip(t.factors[0].rank)
        raise OddCoxeterError("product contains an even-rank A factor")
    toks = []
    for off, orient in orientations_for(t):
        toks.extend(muflip_components(orient, off)["flip"])
    return toks


def doubled_quiver(t: LieType, mode: str = "02", lattice: bool = False) -> Quiver:
    if lattice or _use_lattice(t):
        if not t.is_simple:
            raise OddCoxeterError("even-rank A factor in a product")
        n = t.factors[0].rank
        return an_q02(n) if mode == "02" else an_q13(n)
    out = Quiver()
    for off, orient in orientations_for(t):
        part = rect_q02(orient, off) if mode == "02" else rect_q13(orient, off)
        for _, v in part.vertices.items():
            out.add_vertex(v)
        for a, b, s2 in part.edge_items():
            out.set_sigma2(a, b, s2)
    return out


# ---------------------------------------------------------------------------
# sequence text format
# ---------------------------------------------------------------------------

def sequence_to_text(tokens) -> str:
    return " ".join(tokens) + ("\n" if tokens else "\n")


def sequence_from_text(text: str):
    return text.split()

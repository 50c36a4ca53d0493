"""Root-system and Weyl-group combinatorics.

Cartan matrices are stored so that column j holds the coordinates of the
simple root alpha_j in the fundamental-weight basis.  The vertex weights
d_i attached to Dynkin nodes are the quiver weights: nodes for *shorter*
roots get the *larger* weight.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

__all__ = [
    "LieType",
    "LieTypeError",
    "OddCoxeterError",
    "RootDatum",
    "DynkinOrientation",
    "cartan_matrix",
    "simple_reflection",
    "apply_word",
    "longest_word",
    "an_special_word",
    "chamber_word",
    "sigma_g",
    "default_orientation",
]


class LieTypeError(ValueError):
    pass


class OddCoxeterError(LieTypeError):
    """The repeated-Coxeter presentation needs an even Coxeter number.

    Raised for A_{2n}; callers should switch to the staircase word of
    :func:`an_special_word` and the lattice construction.
    """


_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 2,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_COXETER_NUMBER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _RANK_RULES:
            raise LieTypeError(f"unknown series {self.series!r}")
        if not _RANK_RULES[self.series](self.rank):
            raise LieTypeError(f"rank {self.rank} invalid for series {self.series}")

    @property
    def coxeter_number(self) -> int:
        return _COXETER_NUMBER[self.series](self.rank)

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


class LieType:
    """A simple type or an ordered product of simple types ("A3xC2")."""

    def __init__(self, factors):
        if isinstance(factors, SimpleType):
            factors = [factors]
        factors = list(factors)
        if not factors:
            raise LieTypeError("empty type")
        expanded = []
        for f in factors:
            # D_2 has a disconnected diagram; treat it as its two A_1 blocks.
            if f.series == "D" and f.rank == 2:
                expanded.extend([SimpleType("A", 1), SimpleType("A", 1)])
            else:
                expanded.append(f)
        self.factors = tuple(expanded)
        self._display = "x".join(str(f) for f in factors)

    @classmethod
    def parse(cls, text: str) -> "LieType":
        parts = text.strip().split("x")
        factors = []
        for part in parts:
            m = re.fullmatch(r"\s*([A-G])\s*_?(\d+)\s*", part)
            if not m:
                raise LieTypeError(f"cannot parse Lie type {part!r}")
            factors.append(SimpleType(m.group(1), int(m.group(2))))
        return cls(factors)

    @property
    def is_simple(self) -> bool:
        return len(self.factors) == 1

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def __str__(self) -> str:
        return self._display

    def __repr__(self) -> str:
        return f"LieType({self._display!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LieType) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


def _simple_edges(series: str, n: int):
    """Dynkin-graph edges, 1-based node labels matching the tables in use."""
    chain = [(i, i + 1) for i in range(1, n)]
    if series in ("A", "B", "C", "F", "G"):
        return chain
    if series == "D":
        if n == 2:
            return []
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if series == "E":
        if n == 6:
            return [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if n == 7:
            return [(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (6, 7)]
        return [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (6, 8)]
    raise LieTypeError(series)


def _simple_cartan_and_weights(series: str, n: int):
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (a, b) in _simple_edges(series, n):
        cartan[a - 1][b - 1] = -1
        cartan[b - 1][a - 1] = -1
    weights = [1] * n
    if series == "B":
        # node n is the short root
        cartan[n - 1][n - 2] = -2
        weights[n - 1] = 2
    elif series == "C":
        # nodes 1..n-1 are the short roots
        cartan[n - 2][n - 1] = -2
        for i in range(n - 1):
            weights[i] = 2
    elif series == "F":
        # nodes 1, 2 short here; double bond between 2 and 3
        cartan[1][2] = -2
        weights[0] = weights[1] = 2
    elif series == "G":
        # node 1 short
        cartan[0][1] = -3
        weights[0] = 3
    return cartan, weights


class RootDatum:
    """Cartan data for a (possibly product) type, with global 1-based labels."""

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        self.rank = lie_type.rank
        self.cartan = [[0] * self.rank for _ in range(self.rank)]
        self.weights = []
        self.edges = set()
        self.factor_spans = []  # (offset, SimpleType)
        off = 0
        for f in lie_type.factors:
            cart, wts = _simple_cartan_and_weights(f.series, f.rank)
            for i in range(f.rank):
                for j in range(f.rank):
                    self.cartan[off + i][off + j] = cart[i][j]
            self.weights.extend(wts)
            for (a, b) in _simple_edges(f.series, f.rank):
                self.edges.add(frozenset((off + a, off + b)))
            self.factor_spans.append((off, f))
            off += f.rank
        self._sigma = None

    def factor_of(self, letter: int):
        for off, f in self.factor_spans:
            if off < letter <= off + f.rank:
                return off, f
        raise IndexError(letter)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    @property
    def sigma(self):
        if self._sigma is None:
            self._sigma = sigma_g(self)
        return self._sigma

    def sigma_of(self, i: int) -> int:
        return self.sigma[i - 1]


def cartan_matrix(t: LieType):
    """Cartan matrix; block-diagonal concatenation for products."""
    return [row[:] for row in RootDatum(t).cartan]


def simple_reflection(datum: RootDatum, j: int, lam):
    """Apply s_j to a weight written in the fundamental-weight basis."""
    if not 1 <= j <= datum.rank:
        raise IndexError(f"reflection index {j} out of range 1..{datum.rank}")
    cj = lam[j - 1]
    if cj == 0:
        return tuple(lam)
    return tuple(lam[i] - cj * datum.cartan[i][j - 1] for i in range(datum.rank))


def apply_word(datum: RootDatum, word, lam):
    """Left action of a word, letters applied right to left."""
    out = tuple(lam)
    for letter in reversed(list(word)):
        out = simple_reflection(datum, letter, out)
    return out


def fundamental_weight(datum: RootDatum, i: int):
    return tuple(1 if k == i - 1 else 0 for k in range(datum.rank))


def an_special_word(n: int):
    """The staircase presentation (1..n, 1..n-1, ..., 1 2, 1) of w_0 for A_n."""
    if n < 1:
        raise LieTypeError("rank must be positive")
    word = []
    for top in range(n, 0, -1):
        word.extend(range(1, top + 1))
    return word


def chamber_word(word, k: int):
    """Suffix product (i_m, ..., i_k), the word for w_k."""
    m = len(word)
    if not 1 <= k <= m:
        raise IndexError(f"chamber index {k} out of range 1..{m}")
    return list(reversed(word[k - 1:]))


class DynkinOrientation:
    """An acyclic orientation of a simple factor's Dynkin graph.

    ``cox`` lists each node exactly once (the induced Coxeter element);
    ``partitions`` is the breadth-first cover T_0..T_m from the root.
    """

    def __init__(self, lie_type: LieType, cox, partitions):
        if not lie_type.is_simple:
            raise LieTypeError("orientations are per simple factor")
        self.lie_type = lie_type
        self.datum = RootDatum(lie_type)
        self.cox = list(cox)
        self.partitions = [list(p) for p in partitions]
        n = lie_type.rank
        if sorted(self.cox) != list(range(1, n + 1)):
            raise LieTypeError("Coxeter word must contain each node exactly once")
        flat = [x for p in self.partitions for x in p]
        if sorted(flat) != list(range(1, n + 1)):
            raise LieTypeError("partitions must cover the nodes")
        if flat != self.cox:
            raise LieTypeError("Coxeter word must list the partitions in order")

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def coxeter_number(self) -> int:
        return self.lie_type.factors[0].coxeter_number

    @property
    def ell(self) -> int:
        return self.coxeter_number // 2 - 1

    def position_in_cox(self, i: int) -> int:
        return self.cox.index(i) + 1

    def is_tree_like(self) -> bool:
        datum = self.datum
        root = self.partitions[0]
        if len(root) != 1:
            return False
        if len(datum.edges) != self.rank - 1:
            return False
        # every node in T_d must have exactly one neighbor in T_{d-1}
        for d in range(1, len(self.partitions)):
            for x in self.partitions[d]:
                up = [y for y in self.partitions[d - 1] if datum.adjacent(x, y)]
                near = [y for p in self.partitions[: d - 1] for y in p if datum.adjacent(x, y)]
                same = [y for y in self.partitions[d] if datum.adjacent(x, y)]
                if len(up) != 1 or near or same:
                    return False
        return True

    def is_well_rooted(self) -> bool:
        if not self.is_tree_like():
            return False
        sig = self.datum.sigma
        for part in self.partitions:
            if sorted(sig[x - 1] for x in part) != sorted(part):
                return False
        return True


def longest_word(orient: DynkinOrientation):
    """The presentation c^(h/2) of w_0; rejects odd Coxeter numbers."""
    h = orient.coxeter_number
    if h % 2 != 0:
        raise OddCoxeterError(
            f"{orient.lie_type} has odd Coxeter number {h}; "
            "use the staircase word (an_special_word) instead"
        )
    return orient.cox * (h // 2)


def _w0_word_for_datum(datum: RootDatum):
    """Some presentation of w_0, per factor (staircase for series A)."""
    word = []
    for off, f in datum.factor_spans:
        if f.series == "A":
            part = an_special_word(f.rank)
        else:
            orient = default_orientation(LieType([f]))
            part = longest_word(orient)
        word.extend(x + off for x in part)
    return word


def sigma_g(datum: RootDatum):
    """The involution with w_0(omega_i) = -omega_{sigma(i)}, as a tuple."""
    w0 = _w0_word_for_datum(datum)
    perm = []
    for i in range(1, datum.rank + 1):
        image = apply_word(datum, w0, fundamental_weight(datum, i))
        neg = [k + 1 for k, c in enumerate(image) if c == -1]
        if sum(abs(c) for c in image) != 1 or len(neg) != 1:
            raise AssertionError(f"w_0(omega_{i}) is not minus a fundamental weight")
        perm.append(neg[0])
    return tuple(perm)


def _partitions_from_root(edges, n: int, root: int):
    """Breadth-first partitions of a tree from the root."""
    seen = {root}
    parts = [[root]]
    while len(seen) < n:
        prev = parts[-1]
        nxt = sorted(
            y
            for y in range(1, n + 1)
            if y not in seen and any(frozenset((x, y)) in edges for x in prev)
        )
        if not nxt:
            raise LieTypeError("graph is disconnected")
        parts.append(nxt)
        seen.update(nxt)
    return parts


def default_orientation(t: LieType) -> DynkinOrientation:
    """The per-type orientation used throughout: zig-zag from the center
    for series A, the first node otherwise (node 2 for E_6)."""
    if not t.is_simple:
        raise LieTypeError("default_orientation takes a simple type")
    f = t.factors[0]
    series, n = f.series, f.rank
    datum = RootDatum(t)
    if series == "A":
        root = (n + 1) // 2
    elif series == "E" and n == 6:
        root = 2
    else:
        root = 1
    parts = _partitions_from_root(datum.edges, n, root)
    cox = [x for p in parts for x in p]
    return DynkinOrientation(t, cox, parts)


def orientations_for(t: LieType):
    """Per-factor default orientations with their letter offsets."""
    datum = RootDatum(t)
    out = []
    for off, f in datum.factor_spans:
        out.append((off, default_orientation(LieType([f]))))
    return out

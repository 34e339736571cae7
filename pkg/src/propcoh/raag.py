"""Right-angled Artin groups: graphs, cliques, the Salvetti cochain complex,
the piling normal form, special subgroups and Britton reduction for HNN words."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Protocol, Sequence

import numpy as np

from .fp_linalg import CochainComplex, FpMatrix
from .presentations import (
    GroupPresentation,
    HnnSpec,
    PresentationError,
    Word,
    commutator,
    free_reduce,
    inverse,
    letter,
)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise GraphError(f"loop at vertex {self.vertices[a]!r}")
            if not (0 <= a < len(self.vertices) and 0 <= b < len(self.vertices)):
                raise GraphError(f"edge {(a, b)} references a missing vertex")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in self.vertices]
        for a, b in norm:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def from_names(cls, vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(vertices)}
        pairs = []
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must have two endpoints")
            a, b = e
            if a not in index or b not in index:
                raise GraphError(f"edge {e!r} references a missing vertex")
            key = frozenset((a, b))
            if key in seen:
                raise GraphError(f"duplicate edge {e!r}")
            seen.add(key)
            pairs.append((index[a], index[b]))
        return cls(tuple(vertices), frozenset(pairs))

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimpleGraph":
        return cls.from_names(list(data["vertices"]), data.get("edges", []))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[a], self.vertices[b]] for a, b in sorted(self.edges)],
        }

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacent(self, a: int, b: int) -> bool:
        return b in self._adj[a]

    def neighbours(self, a: int) -> frozenset[int]:
        return self._adj[a]

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def induced(self, subset: Iterable[int]) -> "SimpleGraph":
        keep = sorted(set(subset))
        pos = {v: i for i, v in enumerate(keep)}
        edges = {(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos}
        return SimpleGraph(tuple(self.vertices[v] for v in keep), frozenset(edges))


def load_graph(path: str) -> SimpleGraph:
    with open(path) as fh:
        return SimpleGraph.from_dict(json.load(fh))


def edgeless_graph(n: int, names: Sequence[str] | None = None) -> SimpleGraph:
    names = names or [chr(ord("a") + i) for i in range(n)]
    return SimpleGraph(tuple(names), frozenset())


def complete_graph(n: int) -> SimpleGraph:
    names = [chr(ord("a") + i) for i in range(n)]
    return SimpleGraph(tuple(names), frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> SimpleGraph:
    names = [chr(ord("a") + i) for i in range(n)]
    return SimpleGraph(tuple(names), frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    names = [chr(ord("a") + i) for i in range(n)]
    return SimpleGraph(tuple(names), frozenset((i, (i + 1) % n) for i in range(n)))


# Cliques and the Salvetti complex -------------------------------------------

def cliques(g: SimpleGraph, size: int) -> list[tuple[int, ...]]:
    """All vertex sets of the given size spanning a complete subgraph, sorted."""
    if size < 0:
        raise ValueError("clique size must be nonnegative")
    if size == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def extend(current: tuple[int, ...], candidates: list[int]):
        if len(current) == size:
            out.append(current)
            return
        for k, v in enumerate(candidates):
            extend(current + (v,), [w for w in candidates[k + 1:] if g.adjacent(v, w)])

    extend((), list(range(g.n)))
    return out


def clique_count(g: SimpleGraph, size: int) -> int:
    return len(cliques(g, size))


def build_raag_presentation(g: SimpleGraph) -> GroupPresentation:
    rels = [commutator(letter(a), letter(b)) for a, b in sorted(g.edges)]
    return GroupPresentation(g.vertices, tuple(rels))


def salvetti_cochain_complex(g: SimpleGraph, p: int, maxdeg: int) -> CochainComplex:
    """Cellular cochains of the Salvetti complex with F_p coefficients.

    Degrees ``0 .. maxdeg + 1`` are built so that H^maxdeg is computable.  The
    k-cells are the k-cliques; each codimension-one face of a cube appears
    twice (front and back, differing by a generator translate that acts
    trivially on Z/p), so the coboundaries must vanish.  They are built from
    the face structure and then checked rather than assumed zero.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    cells = [cliques(g, k) for k in range(maxdeg + 2)]
    diffs = []
    for k in range(maxdeg + 1):
        lower = {c: i for i, c in enumerate(cells[k])}
        bd = np.zeros((len(cells[k]), len(cells[k + 1])), dtype=np.int64)
        for j, cube in enumerate(cells[k + 1]):
            for i in range(len(cube)):
                face = lower[cube[:i] + cube[i + 1:]]
                sign = -1 if i % 2 else 1
                bd[face, j] += sign      # front face
                bd[face, j] -= sign      # back face, translated by cube[i]
        coboundary = FpMatrix(p, bd.T, rows=len(cells[k + 1]), cols=len(cells[k]))
        if not coboundary.is_zero():
            raise AssertionError(f"Salvetti coboundary d_{k} does not vanish")
        diffs.append(coboundary)
    return CochainComplex(p, tuple(len(c) for c in cells), tuple(diffs))


# Piling normal form ---------------------------------------------------------

class RaagNormalForm:
    """Heap ("piling") normal form of a RAAG element.

    ``piles[v]`` is a stack over {+1, -1, 0}: a signed entry records a letter
    on vertex v, a 0 records a later-or-earlier letter that does not commute
    with v.  Two words are equal in the group iff their pilings coincide.
    """

    __slots__ = ("graph", "piles")

    def __init__(self, graph: SimpleGraph, piles: tuple[tuple[int, ...], ...]):
        self.graph = graph
        self.piles = piles

    def __eq__(self, other) -> bool:
        return isinstance(other, RaagNormalForm) and self.piles == other.piles and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.piles)

    def is_identity(self) -> bool:
        return not any(self.piles)

    def length(self) -> int:
        return sum(1 for pile in self.piles for e in pile if e)

    def word(self) -> Word:
        """A reduced word for the element (least available vertex first)."""
        piles = [list(pile) for pile in self.piles]
        g = self.graph
        out = []
        heads = [0] * g.n
        while True:
            for v in range(g.n):
                if heads[v] < len(piles[v]) and piles[v][heads[v]] != 0:
                    break
            else:
                break
            out.append((v, piles[v][heads[v]]))
            heads[v] += 1
            for u in range(g.n):
                if u != v and not g.adjacent(u, v):
                    heads[u] += 1
        return tuple(out)

    def __repr__(self) -> str:
        return f"RaagNormalForm({self.piles})"


def raag_normal_form(g: SimpleGraph, w: Iterable[tuple[int, int]]) -> RaagNormalForm:
    piles: list[list[int]] = [[] for _ in range(g.n)]
    blockers = [[u for u in range(g.n) if u != v and not g.adjacent(u, v)] for v in range(g.n)]
    for v, e in w:
        if not 0 <= v < g.n or e not in (1, -1):
            raise GraphError(f"letter {(v, e)} is not a vertex letter")
        pile = piles[v]
        if pile and pile[-1] == -e:
            pile.pop()
            for u in blockers[v]:
                piles[u].pop()
        else:
            pile.append(e)
            for u in blockers[v]:
                piles[u].append(0)
    return RaagNormalForm(g, tuple(tuple(p) for p in piles))


def is_trivial(g: SimpleGraph, w: Iterable[tuple[int, int]]) -> bool:
    return raag_normal_form(g, w).is_identity()


def words_equal(g: SimpleGraph, u: Word, v: Word) -> bool:
    return raag_normal_form(g, u) == raag_normal_form(g, v)


def retract(w: Iterable[tuple[int, int]], subset: Iterable[int]) -> Word:
    """Image of w under the retraction killing every vertex outside ``subset``."""
    keep = set(subset)
    return free_reduce(l for l in w if l[0] in keep)


def special_subgroup_membership(g: SimpleGraph, subset: Iterable[int], w: Word) -> bool:
    subset = set(subset)
    if not subset <= set(range(g.n)):
        raise GraphError("subset is not a set of vertices")
    return words_equal(g, retract(w, subset), tuple(w))


# Britton reduction ----------------------------------------------------------

class OracleError(RuntimeError):
    """The membership oracle gave inconsistent answers."""


class MembershipOracle(Protocol):
    def to_K(self, g: Word) -> Word | None: ...
    def to_H(self, g: Word) -> Word | None: ...
    def is_trivial(self, g: Word) -> bool: ...


@dataclass(frozen=True)
class ReducedSequence:
    """g_0, t^e_1, g_1, ..., t^e_n, g_n."""

    pieces: tuple[Word, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.pieces) != len(self.signs) + 1:
            raise ValueError("a sequence needs one more base piece than stable letters")
        if any(e not in (1, -1) for e in self.signs):
            raise ValueError("stable letter exponents must be +1 or -1")

    @property
    def length(self) -> int:
        return len(self.signs)

    def word(self, stable: int) -> Word:
        out = list(self.pieces[0])
        for e, g in zip(self.signs, self.pieces[1:]):
            out.append((stable, e))
            out.extend(g)
        return free_reduce(out)


def sequence_from_word(w: Sequence[tuple[int, int]], stable: int) -> ReducedSequence:
    pieces: list[list] = [[]]
    signs = []
    for l in w:
        if l[0] == stable:
            signs.append(l[1])
            pieces.append([])
        else:
            pieces[-1].append(l)
    return ReducedSequence(tuple(free_reduce(p) for p in pieces), tuple(signs))


def britton_reduce(s: HnnSpec, seq: ReducedSequence, membership: MembershipOracle) -> ReducedSequence:
    """Remove pinches t^-1 h t (h in H) and t k t^-1 (k in K) until none remain."""
    pieces = [tuple(seq.pieces[0])]
    signs: list[int] = []
    for e, g in zip(seq.signs, seq.pieces[1:]):
        if signs and signs[-1] == -e:
            middle = pieces[-1]
            if e == 1:      # t^-1 middle t
                image = membership.to_K(middle)
                back = membership.to_H(image) if image is not None else None
            else:           # t middle t^-1
                image = membership.to_H(middle)
                back = membership.to_K(image) if image is not None else None
            if image is not None:
                if back is None or not membership.is_trivial(free_reduce((*back, *inverse(middle)))):
                    raise OracleError(f"oracle is inconsistent on {middle}")
                signs.pop()
                pieces.pop()
                pieces[-1] = free_reduce((*pieces[-1], *image, *g))
                continue
        signs.append(e)
        pieces.append(tuple(g))
    return ReducedSequence(tuple(pieces), tuple(signs))


def hnn_element_is_trivial(s: HnnSpec, w: Word, membership: MembershipOracle) -> bool:
    red = britton_reduce(s, sequence_from_word(w, s.stable_index), membership)
    return red.length == 0 and membership.is_trivial(red.pieces[0])


class RaagSpecialOracle:
    """H = <Y> and K = <phi(Y)> special subgroups of a RAAG, phi a vertex bijection."""

    def __init__(self, graph: SimpleGraph, subset: Sequence[int], image: Sequence[int] | None = None):
        image = list(subset) if image is None else list(image)
        if len(image) != len(subset) or len(set(image)) != len(image):
            raise GraphError("phi must be a bijection between vertex subsets")
        for (a, b), (c, d) in zip(combinations(subset, 2), combinations(image, 2)):
            if graph.adjacent(a, b) != graph.adjacent(c, d):
                raise GraphError("phi does not preserve the induced subgraph")
        self.graph = graph
        self.H = tuple(subset)
        self.K = tuple(image)
        self._fwd = dict(zip(self.H, self.K))
        self._bwd = dict(zip(self.K, self.H))

    def _map(self, g: Word, subset, table) -> Word | None:
        if not special_subgroup_membership(self.graph, subset, g):
            return None
        return tuple((table[v], e) for v, e in retract(g, subset))

    def to_K(self, g: Word) -> Word | None:
        return self._map(g, self.H, self._fwd)

    def to_H(self, g: Word) -> Word | None:
        return self._map(g, self.K, self._bwd)

    def is_trivial(self, g: Word) -> bool:
        return is_trivial(self.graph, g)

    def hnn_spec(self, stable: str = "t") -> HnnSpec:
        base = build_raag_presentation(self.graph)
        return HnnSpec(base, tuple(letter(v) for v in self.H), tuple(letter(v) for v in self.K), stable)


class WholeBaseOracle:
    """H = K = the whole base group, phi given on generators.

    ``images[i]`` is phi(generator i) and ``inverse_images[i]`` is
    phi^-1(generator i); both default to the identity.  ``trivial`` decides
    the word problem in the base (default: free reduction, i.e. a free base).
    """

    def __init__(
        self,
        ngens: int,
        images: Sequence[Word] | None = None,
        inverse_images: Sequence[Word] | None = None,
        trivial: Callable[[Word], bool] | None = None,
    ):
        ident = [letter(i) for i in range(ngens)]
        self.images = list(images) if images is not None else ident
        self.inverse_images = list(inverse_images) if inverse_images is not None else ident
        self._trivial = trivial or (lambda w: not free_reduce(w))

    @staticmethod
    def _sub(g: Word, table) -> Word:
        out = []
        for v, e in g:
            out.extend(table[v] if e == 1 else inverse(table[v]))
        return free_reduce(out)

    def to_K(self, g: Word) -> Word:
        return self._sub(g, self.images)

    def to_H(self, g: Word) -> Word:
        return self._sub(g, self.inverse_images)

    def is_trivial(self, g: Word) -> bool:
        return self._trivial(g)


def parse_raag_word(g: SimpleGraph, text: str) -> Word:
    from .presentations import parse_word

    try:
        return parse_word(text, g.vertices)
    except PresentationError as exc:
        raise GraphError(str(exc)) from None

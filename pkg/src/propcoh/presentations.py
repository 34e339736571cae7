"""Words, finite presentations and the constructors used throughout.

A word is a tuple of ``(generator_index, exponent)`` letters with exponent
``+1`` or ``-1``.  Generators are referenced by index internally and by name
at every interface.  The commutator convention is ``[x, y] = x^-1 y^-1 x y``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]
Word = tuple[Letter, ...]


class PresentationError(ValueError):
    pass


class WordParseError(PresentationError):
    def __init__(self, message: str, token_index: int, offset: int, text: str):
        super().__init__(f"{message} (token {token_index} at offset {offset} in {text!r})")
        self.token_index = token_index
        self.offset = offset


def free_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def commutator(x: Sequence[Letter], y: Sequence[Letter]) -> Word:
    return free_reduce((*inverse(x), *inverse(y), *x, *y))


def power(word: Sequence[Letter], k: int) -> Word:
    base = tuple(word) if k >= 0 else inverse(word)
    return free_reduce(base * abs(k))


def letter(g: int, e: int = 1) -> Word:
    return ((g, e),)


def is_cyclic_conjugate(u: Sequence[Letter], v: Sequence[Letter]) -> bool:
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return False
    if not u:
        return True
    return any(u[k:] + u[:k] == v for k in range(len(u)))


def exponent_sums(word: Sequence[Letter], ngens: int) -> list[int]:
    sums = [0] * ngens
    for g, e in word:
        sums[g] += e
    return sums


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse whitespace separated letters ``name``, ``name^-1`` or ``name^k``."""
    index = {n: i for i, n in enumerate(names)}
    letters: list[Letter] = []
    pos = 0
    tokens = text.split()
    for k, tok in enumerate(tokens):
        pos = text.index(tok, pos)
        if tok == "1" and len(tokens) == 1:
            return ()
        name, caret, exp_text = tok.partition("^")
        if name not in index:
            raise WordParseError(f"unknown generator {name!r}", k, pos, text)
        exp = 1
        if caret:
            try:
                exp = int(exp_text)
            except ValueError:
                raise WordParseError(f"bad exponent {exp_text!r}", k, pos, text) from None
        sign = 1 if exp > 0 else -1
        letters.extend([(index[name], sign)] * abs(exp))
        pos += len(tok)
    return tuple(letters)


def format_word(word: Sequence[Letter], names: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(names[g] if e == 1 else f"{names[g]}^-1" for g, e in word)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        rels = []
        for r in self.relators:
            r = tuple(tuple(x) for x in r)
            for g, e in r:
                if not 0 <= g < len(self.generators) or e not in (1, -1):
                    raise PresentationError(f"relator letter {(g, e)} is invalid")
            rels.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, word: Sequence[Letter]) -> str:
        return format_word(word, self.generators)

    def exponent_matrix(self) -> list[list[int]]:
        """Relator-by-generator matrix of exponent sums."""
        return [exponent_sums(r, self.ngens) for r in self.relators]

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [self.format(r) for r in self.relators],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GroupPresentation":
        try:
            gens = list(data["generators"])
        except (KeyError, TypeError):
            raise PresentationError("presentation needs a 'generators' list") from None
        rels = [parse_word(text, gens) for text in data.get("relators", [])]
        return cls(tuple(gens), tuple(rels))

    @classmethod
    def from_strings(cls, generators: Sequence[str], relators: Sequence[str]) -> "GroupPresentation":
        return cls.from_dict({"generators": list(generators), "relators": list(relators)})


def load_presentation(path: str) -> GroupPresentation:
    with open(path) as fh:
        return GroupPresentation.from_dict(json.load(fh))


@dataclass(frozen=True)
class HnnSpec:
    """``<base, t | t^-1 h_i t = k_i>`` with h_i, k_i positionally matched."""

    base: GroupPresentation
    assoc_H: tuple[Word, ...]
    assoc_K: tuple[Word, ...]
    stable: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "assoc_H", tuple(free_reduce(w) for w in self.assoc_H))
        object.__setattr__(self, "assoc_K", tuple(free_reduce(w) for w in self.assoc_K))
        if len(self.assoc_H) != len(self.assoc_K):
            raise PresentationError("associated subgroup lists have different lengths")
        if self.stable in self.base.generators:
            raise PresentationError(f"stable letter {self.stable!r} clashes with a base generator")

    @property
    def stable_index(self) -> int:
        return self.base.ngens


def build_hnn_presentation(s: HnnSpec) -> GroupPresentation:
    t = s.stable_index
    rels = list(s.base.relators)
    for h, k in zip(s.assoc_H, s.assoc_K):
        rels.append(free_reduce(((t, -1), *h, (t, 1), *inverse(k))))
    return GroupPresentation(s.base.generators + (s.stable,), tuple(rels))


@dataclass(frozen=True)
class AmalgamSpec:
    left: GroupPresentation
    right: GroupPresentation
    amalgam_left: tuple[Word, ...]
    amalgam_right: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "amalgam_left", tuple(free_reduce(w) for w in self.amalgam_left))
        object.__setattr__(self, "amalgam_right", tuple(free_reduce(w) for w in self.amalgam_right))
        if len(self.amalgam_left) != len(self.amalgam_right):
            raise PresentationError("amalgam word lists have different lengths")


@dataclass(frozen=True)
class AmalgamLayout:
    """Where the right factor's generators went in the amalgam presentation."""

    presentation: GroupPresentation
    right_map: tuple[int, ...]


def _amalgam_layout(s: AmalgamSpec) -> AmalgamLayout:
    left, right = s.left, s.right
    merged: dict[int, int] = {}
    identifications = []
    for lw, rw in zip(s.amalgam_left, s.amalgam_right):
        if (
            len(lw) == 1 and len(rw) == 1 and lw[0][1] == 1 and rw[0][1] == 1
            and rw[0][0] not in merged and lw[0][0] not in merged.values()
        ):
            merged[rw[0][0]] = lw[0][0]
        else:
            identifications.append((lw, rw))
    names = list(left.generators)
    right_map = []
    for i, name in enumerate(right.generators):
        if i in merged:
            right_map.append(merged[i])
            continue
        new = name
        k = 2
        while new in names:
            new = f"{name}_{k}"
            k += 1
        names.append(new)
        right_map.append(len(names) - 1)

    def move(w):
        return tuple((right_map[g], e) for g, e in w)

    rels: list[Word] = []
    for r in (*left.relators, *(move(r) for r in right.relators)):
        if r not in rels:
            rels.append(r)
    for lw, rw in identifications:
        rel = free_reduce((*lw, *inverse(move(rw))))
        if rel not in rels:
            rels.append(rel)
    return AmalgamLayout(GroupPresentation(tuple(names), tuple(rels)), tuple(right_map))


def build_amalgam_presentation(s: AmalgamSpec) -> GroupPresentation:
    """Presentation of ``left *_A right``.

    Amalgam generators that are single generators on both sides are merged
    into one generator (keeping the left name) instead of contributing an
    identification relator; relators that coincide after the merge are kept
    once.  Other right-hand names that clash get a ``_2`` style suffix.
    """
    return _amalgam_layout(s).presentation


def amalgam_right_map(s: AmalgamSpec) -> tuple[int, ...]:
    return _amalgam_layout(s).right_map


# Built-in examples ---------------------------------------------------------

@dataclass(frozen=True)
class WangData:
    """Extension N -> G -> Z with N free abelian on ``normal`` and ``stable`` generating Z.

    ``action`` is the integer matrix of g -> stable^-1 g stable on N, acting on
    exponent column vectors in the basis ``normal``.
    """

    normal: tuple[str, ...]
    stable: str
    action: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BuiltinExample:
    name: str
    presentation: GroupPresentation
    subgroups: dict[str, tuple[Word, ...]] = field(default_factory=dict)
    wang: WangData | None = None
    amalgam_of: tuple[str, str, str] | None = None
    description: str = ""


def _pres(gens, rels):
    return GroupPresentation.from_strings(gens, rels)


def _section1_swap():
    p = _pres(["x", "y", "t"], ["x^-1 y^-1 x y", "t x t^-1 y^-1", "t y t^-1 x^-1"])
    return BuiltinExample(
        "section1_swap", p,
        subgroups={"N": (p.word("x"), p.word("y"))},
        wang=WangData(("x", "y"), "t", ((0, 1), (1, 0))),
        description="Z^2 by Z with the generator swapping the two factors",
    )


def _heisenberg():
    # [t, y] = x central
    p = _pres(["x", "y", "t"], ["t^-1 y^-1 t y x^-1", "x^-1 y^-1 x y", "x^-1 t^-1 x t"])
    return BuiltinExample(
        "heisenberg", p,
        subgroups={"center": (p.word("x"),), "N": (p.word("x"), p.word("y"))},
        # t^-1 y t = y x^-1, t^-1 x t = x
        wang=WangData(("x", "y"), "t", ((1, -1), (0, 1))),
        description="integral Heisenberg group, class 2 nilpotent",
    )


def _example311_G1():
    # t1 x t1^-1 = x, t1 y t1^-1 = x y   i.e. (a, b) -> (a + b, b)
    p = _pres(["x", "y", "t1"], ["x^-1 y^-1 x y", "t1 x t1^-1 x^-1", "t1 y t1^-1 y^-1 x^-1"])
    return BuiltinExample(
        "example311_G1", p,
        subgroups={"N": (p.word("x"), p.word("y"))},
        # conjugation g -> t1^-1 g t1 is the inverse automorphism (a, b) -> (a - b, b)
        wang=WangData(("x", "y"), "t1", ((1, -1), (0, 1))),
        description="N = Z^2 by Z acting by (a, b) -> (a + b, b)",
    )


def _example311_G2():
    # t2 x t2^-1 = x y, t2 y t2^-1 = y   i.e. (a, b) -> (a, a + b)
    p = _pres(["x", "y", "t2"], ["x^-1 y^-1 x y", "t2 x t2^-1 y^-1 x^-1", "t2 y t2^-1 y^-1"])
    return BuiltinExample(
        "example311_G2", p,
        subgroups={"N": (p.word("x"), p.word("y"))},
        wang=WangData(("x", "y"), "t2", ((1, 0), (-1, 1))),
        description="N = Z^2 by Z acting by (a, b) -> (a, a + b)",
    )


def _amalgam_example(name, left, right, left_words, right_words, subgroup, description):
    spec = AmalgamSpec(
        left.presentation, right.presentation,
        tuple(left.presentation.word(w) for w in left_words),
        tuple(right.presentation.word(w) for w in right_words),
    )
    pres = build_amalgam_presentation(spec)
    return BuiltinExample(
        name, pres,
        subgroups={subgroup: tuple(pres.word(w) for w in left_words)},
        amalgam_of=(left.name, right.name, subgroup),
        description=description,
    )


def _example311_G():
    return _amalgam_example(
        "example311_G", _example311_G1(), _example311_G2(), ["x", "y"], ["x", "y"], "N",
        "G1 *_N G2 glued along N = <x, y>",
    )


def _heisenberg_central_amalgam():
    h = _heisenberg()
    return _amalgam_example(
        "heisenberg_central_amalgam", h, h, ["x"], ["x"], "A",
        "two Heisenberg groups glued along their common centre <x>",
    )


def _heisenberg_cyclic_amalgam():
    h = _heisenberg()
    return _amalgam_example(
        "heisenberg_cyclic_amalgam", h, h, ["y"], ["y"], "A",
        "two Heisenberg groups glued along the cyclic subgroup <y>",
    )


BUILTINS = {
    "section1_swap": _section1_swap,
    "heisenberg": _heisenberg,
    "example311_G1": _example311_G1,
    "example311_G2": _example311_G2,
    "example311_G": _example311_G,
    "heisenberg_central_amalgam": _heisenberg_central_amalgam,
    "heisenberg_cyclic_amalgam": _heisenberg_cyclic_amalgam,
}


def builtin_example(name: str) -> BuiltinExample:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise PresentationError(
            f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}"
        ) from None


def free_presentation(names: Sequence[str]) -> GroupPresentation:
    return GroupPresentation(tuple(names), ())

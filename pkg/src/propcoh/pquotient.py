"""The lower exponent-p central quotient tower of a finitely presented group.

Level c of the tower is G / lambda_(c+1)(G), held as a weighted
power-commutator presentation over F_p.  Each level is obtained from the
previous one by the usual p-quotient step: add a central tail to every
non-defining relation, enforce consistency, evaluate the defining relators,
and eliminate dependent tails by row reduction over F_p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .budget import Budget, default_budget
from .fp_linalg import FpMatrix, rref
from .presentations import GroupPresentation, Word
from .raag import SimpleGraph, build_raag_presentation, is_trivial as raag_is_trivial

Sparse = tuple[tuple[int, int], ...]
Vec = tuple[int, ...]
Definition = tuple


class InconsistentPresentation(RuntimeError):
    """Internal error: a presentation that should be consistent is not."""


class TrivialWordError(ValueError):
    pass


def _sparse(vec: Sequence[int]) -> Sparse:
    return tuple((k, e) for k, e in enumerate(vec) if e)


@dataclass(frozen=True)
class PcPresentation:
    """Power-commutator presentation of a group of order p^n.

    ``powers[i]`` is the normal form of g_i^p and ``comms[j][i]`` (i < j) the
    normal form of [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i, both as sparse
    ``(generator, exponent)`` tuples over strictly later generators.
    ``definitions[k]`` records how g_k arose: ``("image", x)`` for the image
    of presentation generator x, ``("pow", i)`` or ``("comm", j, i)``.
    """

    p: int
    weights: tuple[int, ...]
    powers: tuple[Sparse, ...]
    comms: tuple[tuple[Sparse, ...], ...]
    definitions: tuple[Definition, ...]

    def __post_init__(self):
        n = len(self.weights)
        if len(self.powers) != n or len(self.comms) != n or len(self.definitions) != n:
            raise ValueError("inconsistent generator counts")
        for i, w in enumerate(self.powers):
            self._check_word(w, i)
        for j, row in enumerate(self.comms):
            if len(row) != j:
                raise ValueError(f"comms[{j}] must list the {j} earlier generators")
            for w in row:
                self._check_word(w, j)

    def _check_word(self, w: Sparse, after: int) -> None:
        last = after
        for g, e in w:
            if g <= last or g >= len(self.weights) or not 0 < e < self.p:
                raise ValueError(f"right-hand side {w} is not a normal form beyond generator {after}")
            last = g

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def order_exponent(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def nclass(self) -> int:
        return max(self.weights, default=0)

    def is_weighted(self) -> bool:
        return all(a <= b for a, b in zip(self.weights, self.weights[1:]))

    @cached_property
    def collector(self) -> "Collector":
        return Collector(self)

    def identity(self) -> Vec:
        return (0,) * self.n

    def to_dict(self) -> dict:
        def dense(w):
            v = [0] * self.n
            for g, e in w:
                v[g] = e
            return v

        return {
            "p": self.p,
            "weights": list(self.weights),
            "definitions": [list(d) for d in self.definitions],
            "powers": [dense(w) for w in self.powers],
            "commutators": {
                f"{j},{i}": dense(self.comms[j][i])
                for j in range(self.n) for i in range(j) if self.comms[j][i]
            },
            "order_exponent": self.n,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PcPresentation":
        n = len(data["weights"])
        comms = [[() for _ in range(j)] for j in range(n)]
        for key, vec in data.get("commutators", {}).items():
            j, i = (int(x) for x in key.split(","))
            comms[j][i] = _sparse(vec)
        return cls(
            data["p"],
            tuple(data["weights"]),
            tuple(_sparse(v) for v in data["powers"]),
            tuple(tuple(r) for r in comms),
            tuple(tuple(d) for d in data["definitions"]),
        )


def elementary_abelian(p: int, n: int) -> PcPresentation:
    return PcPresentation(
        p, (1,) * n, ((),) * n, tuple(((),) * j for j in range(n)), tuple(("image", k) for k in range(n))
    )


def cyclic_pc(p: int, k: int) -> PcPresentation:
    """Z/p^k with g_i^p = g_(i+1)."""
    return PcPresentation(
        p,
        tuple(range(1, k + 1)),
        tuple(((i + 1, 1),) if i + 1 < k else () for i in range(k)),
        tuple(((),) * j for j in range(k)),
        tuple([("image", 0)] + [("pow", i) for i in range(k - 1)]),
    )


def direct_product(a: PcPresentation, b: PcPresentation) -> PcPresentation:
    """Concatenated presentation of a x b (weights need not be monotone)."""
    if a.p != b.p:
        raise ValueError("direct product of presentations over different primes")
    shift = a.n

    def move(w):
        return tuple((g + shift, e) for g, e in w)

    comms = list(a.comms) + [((),) * shift + tuple(move(w) for w in row) for row in b.comms]
    return PcPresentation(
        a.p,
        a.weights + b.weights,
        a.powers + tuple(move(w) for w in b.powers),
        tuple(comms),
        a.definitions + b.definitions,
    )


class Collector:
    """Collection from the left with an explicit stack."""

    def __init__(self, pc: PcPresentation):
        self.p = pc.p
        self.n = pc.n
        self.powers = pc.powers
        self.comms = pc.comms
        nc = pc.n
        while nc > 0 and self._central(pc, nc - 1):
            nc -= 1
        self.nc = nc
        self._inv_gen: dict[int, Vec] = {}

    @staticmethod
    def _central(pc: PcPresentation, k: int) -> bool:
        if pc.powers[k] or any(pc.comms[k]):
            return False
        return not any(pc.comms[j][k] for j in range(k + 1, pc.n))

    def run(self, exp: list[int], stack: list[tuple[int, int]]) -> list[int]:
        p, nc, powers, comms = self.p, self.nc, self.powers, self.comms
        while stack:
            i, e = stack.pop()
            if i >= nc:
                exp[i] = (exp[i] + e) % p
                continue
            tail = [(j, exp[j]) for j in range(i + 1, nc) if exp[j]]
            if not tail:
                a = exp[i] + e
                if a >= p:
                    q, a = divmod(a, p)
                    w = powers[i]
                    if w:
                        for _ in range(q):
                            stack.extend(reversed(w))
                exp[i] = a
                continue
            # exp = prefix * g_i^a * u; u * g_i = g_i * u^(g_i), u^(g_i) = prod (g_j [g_j, g_i])^e_j
            if e > 1:
                stack.append((i, e - 1))
            items: list[tuple[int, int]] = []
            for j, ej in tail:
                exp[j] = 0
                c = comms[j][i]
                if c:
                    for _ in range(ej):
                        items.append((j, 1))
                        items.extend(c)
                else:
                    items.append((j, ej))
            stack.extend(reversed(items))
            a = exp[i] + 1
            if a == p:
                exp[i] = 0
                stack.extend(reversed(powers[i]))
            else:
                exp[i] = a
        return exp

    def mul(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        exp = list(u)
        self.run(exp, [(g, e) for g, e in reversed(_sparse(v))])
        return tuple(exp)

    def times_gen(self, u: Sequence[int], g: int, e: int = 1) -> Vec:
        exp = list(u)
        self.run(exp, [(g, e)])
        return tuple(exp)

    def inv(self, u: Sequence[int]) -> Vec:
        r = list(u)
        out = [0] * self.n
        for k in range(self.n):
            if r[k]:
                a = self.p - r[k]
                out[k] = a
                self.run(r, [(k, a)])
        return tuple(out)

    def gen_inverse(self, g: int) -> Vec:
        if g not in self._inv_gen:
            unit = [0] * self.n
            unit[g] = 1
            self._inv_gen[g] = self.inv(unit)
        return self._inv_gen[g]

    def power(self, u: Sequence[int], k: int) -> Vec:
        if k < 0:
            u, k = self.inv(u), -k
        result = (0,) * self.n
        base = tuple(u)
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def comm(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return self.mul(self.mul(self.inv(u), self.inv(v)), self.mul(u, v))

    def collect(self, word: Iterable[tuple[int, int]], start: Sequence[int] | None = None) -> Vec:
        exp = list(start) if start is not None else [0] * self.n
        for g, e in word:
            if e > 0:
                self.run(exp, [(g, e)])
            elif e < 0:
                inv = self.gen_inverse(g)
                for _ in range(-e):
                    self.run(exp, [(h, x) for h, x in reversed(_sparse(inv))])
        return tuple(exp)


def collect(pc: PcPresentation, word: Iterable[tuple[int, int]]) -> Vec:
    """Normal-form exponent vector of a word in the pc generators."""
    return pc.collector.collect(word)


def _unit(n: int, k: int) -> Vec:
    v = [0] * n
    v[k] = 1
    return tuple(v)


def _consistency_pairs(pc: PcPresentation, prune_class: int | None, n_check: int | None = None):
    """Yield (description, left, right) for the standard consistency checks.

    Only generators below ``n_check`` are iterated over; checks involving a
    central generator of order p (such as a freshly added tail) hold
    automatically.
    """
    col = pc.collector
    p = pc.p
    w = pc.weights
    n = pc.n if n_check is None else n_check
    units = [_unit(pc.n, k) for k in range(n)]
    pminus = [col.power(units[k], p - 1) for k in range(n)]
    for k in range(n):
        for j in range(k):
            for i in range(j):
                if prune_class is not None and w[i] + w[j] + w[k] > prune_class + 1:
                    continue
                left = col.times_gen(col.times_gen(units[k], j), i)
                right = col.mul(units[k], col.times_gen(units[j], i))
                yield ("assoc", k, j, i), left, right
    for j in range(n):
        for i in range(j):
            # g_j^p g_i = g_j^(p-1) (g_j g_i)
            left = col.times_gen(col.collect(pc.powers[j]), i)
            right = col.mul(pminus[j], col.times_gen(units[j], i))
            yield ("pow-left", j, i), left, right
            # (g_j g_i^(p-1)) g_i = g_j g_i^p
            left = col.times_gen(col.mul(units[j], pminus[i]), i)
            right = col.mul(units[j], col.collect(pc.powers[i]))
            yield ("pow-right", j, i), left, right
    for i in range(n):
        left = col.times_gen(col.collect(pc.powers[i]), i)
        right = col.mul(units[i], col.collect(pc.powers[i]))
        yield ("pow-self", i), left, right


def consistency_failures(pc: PcPresentation) -> list[tuple]:
    """All failing consistency checks (empty list means consistent)."""
    return [d for d, left, right in _consistency_pairs(pc, None) if left != right]


# Covering step -------------------------------------------------------------

@dataclass
class _Cover:
    pc: PcPresentation
    images: list[Vec] | None
    new_count: int


def _cover_step(
    pc: PcPresentation,
    presentation: GroupPresentation | None,
    images: Sequence[Vec] | None,
    prune: bool = True,
) -> _Cover:
    """Add tails, enforce consistency (and relators when given), eliminate.

    Without a presentation this yields the p-covering group of ``pc`` with
    the weight-1 generators free; the number of new generators is then the
    rank of the p-multiplicator, i.e. dim H^2(P, F_p).
    """
    p, n = pc.p, pc.n
    c = pc.nclass
    defined = set()
    image_defined = {}
    for k, d in enumerate(pc.definitions):
        if d[0] in ("pow", "comm"):
            defined.add(d)
        elif d[0] == "image" and presentation is not None:
            image_defined[d[1]] = k

    sources: list[Definition] = []
    if presentation is not None:
        for x in range(presentation.ngens):
            if x not in image_defined:
                sources.append(("image", x))
    nimage = len(sources)
    for i in range(n):
        if ("pow", i) not in defined:
            sources.append(("pow", i))
    for j in range(n):
        for i in range(j):
            if ("comm", j, i) in defined:
                continue
            if prune and pc.weights[i] + pc.weights[j] > c + 1:
                continue
            sources.append(("comm", j, i))
    T = len(sources)
    tail_of = {s: n + t for t, s in enumerate(sources)}

    powers = [pc.powers[i] + (((tail_of[("pow", i)], 1),) if ("pow", i) in tail_of else ()) for i in range(n)]
    comms = [
        [pc.comms[j][i] + (((tail_of[("comm", j, i)], 1),) if ("comm", j, i) in tail_of else ()) for i in range(j)]
        for j in range(n)
    ]
    ext = PcPresentation(
        p,
        pc.weights + (c + 1,) * T,
        tuple(powers) + ((),) * T,
        tuple(tuple(r) for r in comms) + tuple(((),) * (n + t) for t in range(T)),
        pc.definitions + tuple(sources),
    )
    col = ext.collector
    relations: list[list[int]] = []

    def add_relation(vec: Vec, what) -> None:
        if any(vec[:n]):
            raise InconsistentPresentation(f"{what} does not vanish in the quotient")
        if any(vec[n:]):
            relations.append(list(vec[n:]))

    for what, left, right in _consistency_pairs(ext, c if prune else None, n):
        if left[:n] != right[:n]:
            raise InconsistentPresentation(f"consistency check {what} fails below the tails")
        diff = tuple((a - b) % p for a, b in zip(left, right))
        if any(diff[n:]):
            relations.append(list(diff[n:]))

    ext_images = None
    if presentation is not None:
        ext_images = []
        for x in range(presentation.ngens):
            if x in image_defined:
                ext_images.append(_unit(n + T, image_defined[x]))
            else:
                v = list(images[x]) + [0] * T
                v[tail_of[("image", x)]] = 1
                ext_images.append(tuple(v))
        inv_images = [col.inv(v) for v in ext_images]
        for r in presentation.relators:
            exp = [0] * (n + T)
            for g, e in r:
                v = ext_images[g] if e == 1 else inv_images[g]
                col.run(exp, [(h, a) for h, a in reversed(_sparse(v))])
            add_relation(tuple(exp), "relator")

    if relations:
        red, pivots = rref(FpMatrix(p, relations, rows=len(relations), cols=T))
        red_a = red.array
    else:
        red_a, pivots = np.zeros((0, T), dtype=np.int64), []
    pivot_row = {pc_: r for r, pc_ in enumerate(pivots)}
    survivors = [t for t in range(T) if t not in pivot_row]
    new_index = {t: n + k for k, t in enumerate(survivors)}
    N = n + len(survivors)

    def tail_expr(t: int) -> Sparse:
        if t in new_index:
            return ((new_index[t], 1),)
        row = red_a[pivot_row[t]]
        return tuple((new_index[f], int(-row[f]) % p) for f in survivors if row[f] % p)

    new_powers = []
    for i in range(n):
        extra = tail_expr(tail_of[("pow", i)] - n) if ("pow", i) in tail_of else ()
        new_powers.append(pc.powers[i] + extra)
    new_comms = []
    for j in range(n):
        row = []
        for i in range(j):
            extra = tail_expr(tail_of[("comm", j, i)] - n) if ("comm", j, i) in tail_of else ()
            row.append(pc.comms[j][i] + extra)
        new_comms.append(tuple(row))
    new_pc = PcPresentation(
        p,
        pc.weights + (c + 1,) * len(survivors),
        tuple(new_powers) + ((),) * len(survivors),
        tuple(new_comms) + tuple(((),) * (n + k) for k in range(len(survivors))),
        pc.definitions + tuple(sources[t] for t in survivors),
    )
    new_images = None
    if presentation is not None:
        new_images = []
        for x in range(presentation.ngens):
            if x in image_defined:
                new_images.append(_unit(N, image_defined[x]))
            else:
                v = list(images[x]) + [0] * len(survivors)
                for g, e in tail_expr(tail_of[("image", x)] - n):
                    v[g] = (v[g] + e) % p
                new_images.append(tuple(v))
    return _Cover(new_pc, new_images, len(survivors))


# Tower -----------------------------------------------------------------------

@dataclass
class PQuotientTower:
    presentation: GroupPresentation
    p: int
    levels: list[PcPresentation] = field(default_factory=list)
    gen_images: list[list[Vec]] = field(default_factory=list)
    truncated: bool = False
    reason: str = ""

    @property
    def nlevels(self) -> int:
        return len(self.levels)

    def level(self, c: int) -> PcPresentation:
        if not 1 <= c <= len(self.levels):
            raise IndexError(f"level {c} not computed (have 1..{len(self.levels)})")
        return self.levels[c - 1]

    def orders(self) -> list[int]:
        return [lv.n for lv in self.levels]

    def layer_ranks(self) -> list[int]:
        prev = 0
        out = []
        for lv in self.levels:
            out.append(lv.n - prev)
            prev = lv.n
        return out

    def projection(self, c: int) -> list[Vec]:
        """Images of the pc generators of level c+1 in level c."""
        upper, lower = self.level(c + 1), self.level(c)
        return [_unit(lower.n, k) if k < lower.n else lower.identity() for k in range(upper.n)]

    def project(self, vec: Sequence[int], to_level: int) -> Vec:
        return tuple(vec[: self.level(to_level).n])

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "p": self.p,
            "presentation": self.presentation.to_dict(),
            "truncated": self.truncated,
            "reason": self.reason,
            "levels": [
                dict(lv.to_dict(), **{"class": c + 1, "generator_images": [list(v) for v in imgs]})
                for c, (lv, imgs) in enumerate(zip(self.levels, self.gen_images))
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def truncate(self, maxclass: int) -> "PQuotientTower":
        if maxclass >= len(self.levels):
            return self
        return PQuotientTower(
            self.presentation, self.p, self.levels[:maxclass], self.gen_images[:maxclass], False, ""
        )


_TOWER_CACHE: dict = {}


def compute_tower(
    pres: GroupPresentation,
    p: int,
    maxclass: int,
    budget: Budget | None = None,
    prune: bool = True,
) -> PQuotientTower:
    """Levels 1..maxclass of the lower exponent-p central quotient tower.

    Stops early, with ``truncated`` set, when the next level would exceed the
    generator or order budget.  Results are cached per (presentation, p,
    budget) and extended on demand.
    """
    from .fp_linalg import is_prime

    if maxclass < 1:
        raise ValueError("maxclass must be at least 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    budget = budget or default_budget()
    key = (pres, p, budget, prune)
    tower = _TOWER_CACHE.get(key)
    if tower is None:
        tower = PQuotientTower(pres, p)
        _TOWER_CACHE[key] = tower
    if tower.truncated and len(tower.levels) < maxclass:
        return _copy(tower)
    while len(tower.levels) < maxclass:
        if tower.levels:
            prev, images = tower.levels[-1], tower.gen_images[-1]
        else:
            prev = PcPresentation(p, (), (), (), ())
            images = [()] * pres.ngens
        if tower.levels and len(tower.levels) >= 2 and tower.levels[-1].n == tower.levels[-2].n:
            # the tower has become constant: G's maximal p-quotient is finite
            tower.levels.append(prev)
            tower.gen_images.append(list(images))
            continue
        cover = _cover_step(prev, pres, images, prune=prune)
        if not budget.admits_level(cover.pc.n):
            tower.truncated = True
            tower.reason = (
                f"level {len(tower.levels) + 1} would have {cover.pc.n} generators, over budget"
            )
            break
        tower.levels.append(cover.pc)
        tower.gen_images.append(cover.images)
    return _copy(tower.truncate(maxclass)) if len(tower.levels) > maxclass else _copy(tower)


def _copy(t: PQuotientTower) -> PQuotientTower:
    return PQuotientTower(t.presentation, t.p, list(t.levels), [list(x) for x in t.gen_images], t.truncated, t.reason)


def clear_tower_cache() -> None:
    _TOWER_CACHE.clear()


def image_in_level(t: PQuotientTower, level: int, w: Word) -> Vec:
    lv = t.level(level)
    col = lv.collector
    images = t.gen_images[level - 1]
    exp = [0] * lv.n
    for g, e in w:
        if not 0 <= g < len(images):
            raise ValueError(f"unknown generator index {g}")
        v = images[g] if e == 1 else col.inv(images[g])
        col.run(exp, [(h, a) for h, a in reversed(_sparse(v))])
    return tuple(exp)


# Subgroups -------------------------------------------------------------------

@dataclass(frozen=True)
class PcSubgroup:
    ambient: PcPresentation
    generators: tuple[Vec, ...]

    @property
    def order_exponent(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return self.ambient.p ** len(self.generators)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(_sift(self.ambient.collector, {_lead(g): g for g in self.generators}, tuple(v)))


def _lead(v: Sequence[int]) -> int:
    for k, e in enumerate(v):
        if e:
            return k
    return -1


def _sift(col: Collector, table: dict[int, Vec], v: Vec) -> Vec:
    p = col.p
    while True:
        k = _lead(v)
        if k < 0 or k not in table:
            return v
        v = col.mul(v, col.power(table[k], p - v[k]))


def subgroup_closure(pc: PcPresentation, gens: Iterable[Sequence[int]]) -> PcSubgroup:
    """Induced generating sequence of the subgroup generated by ``gens``."""
    col = pc.collector
    p = pc.p
    table: dict[int, Vec] = {}
    queue = [tuple(g) for g in gens]
    while queue:
        v = _sift(col, table, queue.pop())
        k = _lead(v)
        if k < 0:
            continue
        v = col.power(v, pow(v[k], -1, p))
        table[k] = v
        queue.append(col.power(v, p))
        for u in list(table.values()):
            if u is not v:
                queue.append(col.comm(v, u))
    # canonical form: clear every other generator's entry at each leading position
    leads = sorted(table)
    for k in leads:
        for m in leads:
            if m >= k:
                break
            u = table[m]
            if u[k]:
                table[m] = col.mul(u, col.power(table[k], p - u[k]))
    for k in leads:
        for m in leads:
            if m < k and table[m][k]:
                raise InconsistentPresentation("subgroup echelon form did not settle")
    return PcSubgroup(pc, tuple(table[k] for k in leads))


# Residual p-finiteness and embeddings ------------------------------------------

@dataclass(frozen=True)
class Witness:
    level: int
    vector: Vec


def residual_p_witness(
    g: SimpleGraph, w: Word, p: int, maxclass: int, budget: Budget | None = None
) -> Witness | None:
    """Smallest tower level in which the RAAG element w survives, or None."""
    if raag_is_trivial(g, w):
        raise TrivialWordError("the word is trivial in the right-angled Artin group")
    tower = compute_tower(build_raag_presentation(g), p, maxclass, budget)
    for c in range(1, tower.nlevels + 1):
        v = image_in_level(tower, c, w)
        if any(v):
            return Witness(c, v)
    return None


@dataclass(frozen=True)
class ProbeVerdict:
    h_class: int
    verified: bool
    g_class: int | None
    detail: str

    def to_dict(self) -> dict:
        return {"h_class": self.h_class, "verified": self.verified, "g_class": self.g_class, "detail": self.detail}


def embedding_probe(
    t_G: PQuotientTower, sub_words: Sequence[Word], t_H: PQuotientTower
) -> list[ProbeVerdict]:
    """For each level c of H's own tower, look for a level c' of G's tower
    such that ker(H -> image in G_c') lies inside ker(H -> H_c).

    That containment holds iff the subgroup D of G_c' x H_c generated by the
    pairs (image in G, image in H) has the same order as its projection to
    G_c'.  A failure at every computed c' is reported as undetermined: finite
    levels cannot refute an embedding of completions.
    """
    if t_G.p != t_H.p:
        raise ValueError("towers over different primes")
    if len(sub_words) != t_H.presentation.ngens:
        raise ValueError("need one subgroup word per generator of H's presentation")
    out = []
    for c in range(1, t_H.nlevels + 1):
        h_level = t_H.level(c)
        h_imgs = t_H.gen_images[c - 1]
        found = None
        for c2 in range(1, t_G.nlevels + 1):
            g_level = t_G.level(c2)
            g_imgs = [image_in_level(t_G, c2, w) for w in sub_words]
            s = subgroup_closure(g_level, g_imgs)
            prod = direct_product(g_level, h_level)
            d = subgroup_closure(prod, [gi + hi for gi, hi in zip(g_imgs, h_imgs)])
            if d.order_exponent == s.order_exponent:
                found = c2
                break
        if found is None:
            out.append(ProbeVerdict(c, False, None, f"undetermined at budget (G levels 1..{t_G.nlevels})"))
        else:
            out.append(ProbeVerdict(c, True, found, f"verified up to ({c},{found})"))
    return out

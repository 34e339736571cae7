"""Cohomology of finite p-groups with trivial F_p coefficients.

Two independent routes are provided.  The bar resolution works for any
finite group small enough to fit the matrix budget.  For degree 2 the
p-covering group gives dim H^2(P, F_p) as the rank of the p-multiplicator
R/[R,F]R^p, and inflation maps between tower levels as ranks of relation
images in that multiplicator; this scales to every tower level we compute.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .budget import Budget, BudgetExceeded, default_budget
from .fp_linalg import CochainComplex, CohomologyDims, FpMatrix, cohomology_of_complex, hstack, nullspace, rank
from .presentations import GroupPresentation
from .pquotient import PcPresentation, PQuotientTower, _cover_step, _unit


class Unavailable:
    """Marker for a bound that the presentation does not provide."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unavailable"


UNAVAILABLE = Unavailable()


@dataclass(frozen=True)
class GroupTable:
    """Elements in mixed-radix order of their normal forms, with a product table."""

    p: int
    n: int
    product: np.ndarray

    @property
    def order(self) -> int:
        return self.product.shape[0]

    @classmethod
    def from_pc(cls, pc: PcPresentation, budget: Budget | None = None) -> "GroupTable":
        budget = budget or default_budget()
        N = pc.order
        budget.check_entries(N, N, "multiplication table")
        col = pc.collector
        elems = [_digits(k, pc.p, pc.n) for k in range(N)]
        table = np.empty((N, N), dtype=np.int64)
        for a, u in enumerate(elems):
            for b, v in enumerate(elems):
                table[a, b] = _index(col.mul(u, v), pc.p)
        return cls(pc.p, pc.n, table)

    @classmethod
    def cyclic(cls, m: int) -> "GroupTable":
        idx = np.arange(m)
        return cls(0, 0, (idx[:, None] + idx[None, :]) % m)

    def identity(self) -> int:
        return 0

    def check(self, samples: int = 200, seed: int = 0) -> None:
        t = self.product
        N = self.order
        if not (t[0] == np.arange(N)).all() or not (t[:, 0] == np.arange(N)).all():
            raise AssertionError("element 0 is not the identity")
        for row in t:
            if len(set(row.tolist())) != N:
                raise AssertionError("product table is not a Latin square")
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, N, size=(3, samples))
        if not (t[t[a, b], c] == t[a, t[b, c]]).all():
            raise AssertionError("product table is not associative")


def _digits(k: int, p: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        k, out[i] = divmod(k, p)
    return tuple(out)


def _index(v, p: int) -> int:
    k = 0
    for e in v:
        k = k * p + e
    return k


def bar_differential(g: GroupTable, p: int, n: int, budget: Budget | None = None) -> FpMatrix:
    """d_n : C^n -> C^(n+1) of the inhomogeneous bar complex, trivial action."""
    N = g.order
    rows, cols = N ** (n + 1), N ** n
    (budget or default_budget()).check_entries(rows, cols, f"bar differential d_{n}")
    r = np.arange(rows, dtype=np.int64)
    # digits g_1 .. g_(n+1), most significant first
    digits = [(r // N ** (n - k)) % N for k in range(n + 1)]
    mat = np.zeros((rows, cols), dtype=np.int64)

    def combine(ds):
        idx = np.zeros(rows, dtype=np.int64)
        for d in ds:
            idx = idx * N + d
        return idx

    np.add.at(mat, (r, combine(digits[1:])), 1)
    for i in range(1, n + 1):
        merged = g.product[digits[i - 1], digits[i]]
        face = combine(digits[: i - 1] + [merged] + digits[i + 1:])
        np.add.at(mat, (r, face), (-1) ** i)
    np.add.at(mat, (r, combine(digits[:n])), (-1) ** (n + 1))
    return FpMatrix(p, mat)


def bar_cochain_complex(g: GroupTable, p: int, maxdeg: int, budget: Budget | None = None) -> CochainComplex:
    """Bar complex in degrees 0..maxdeg+1, so H^0..H^maxdeg are computable."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    diffs = tuple(bar_differential(g, p, n, budget) for n in range(maxdeg + 1))
    dims = tuple(g.order ** n for n in range(maxdeg + 2))
    cx = CochainComplex(p, dims, diffs)
    bad = cx.d_squared_violations()
    if bad:
        raise AssertionError(f"bar complex has d^2 != 0 in degrees {bad}")
    return cx


def cohomology_dims_finite(pc: PcPresentation, maxdeg: int, budget: Budget | None = None) -> CohomologyDims:
    budget = budget or default_budget()
    N = pc.order
    budget.check_entries(N ** (maxdeg + 1), N ** maxdeg, f"bar differential d_{maxdeg}")
    cx = bar_cochain_complex(GroupTable.from_pc(pc, budget), pc.p, maxdeg, budget)
    return CohomologyDims(pc.p, {n: cohomology_of_complex(cx, n) for n in range(maxdeg + 1)})


# Multiplicator route ------------------------------------------------------------

def h2_dim(pc: PcPresentation) -> int:
    """dim H^2(P, F_p) as the rank of the p-multiplicator."""
    return _cover_step(pc, None, None).new_count


def h1_dim(pc: PcPresentation) -> int:
    return sum(1 for w in pc.weights if w == 1)


def _relation_images(source: PcPresentation, target: PcPresentation) -> list[tuple[int, ...]]:
    """Images in the p-multiplicator of ``target`` of the relations of ``source``.

    ``source`` must be a quotient-compatible refinement of ``target`` (a later
    tower level) with the same weight-1 generators.
    """
    cover = _cover_step(target, None, None)
    cpc = cover.pc
    col = cpc.collector
    p, n_t = target.p, target.n
    phi: list[tuple[int, ...]] = []
    for k, d in enumerate(source.definitions):
        if source.weights[k] == 1:
            phi.append(_unit(cpc.n, k))
        elif d[0] == "pow":
            phi.append(col.power(phi[d[1]], p))
        elif d[0] == "comm":
            phi.append(col.comm(phi[d[1]], phi[d[2]]))
        else:
            raise ValueError(f"generator {k} of weight {source.weights[k]} has no usable definition")

    def evaluate(sparse):
        v = (0,) * cpc.n
        for g, e in sparse:
            v = col.mul(v, col.power(phi[g], e))
        return v

    defined = {d for d in source.definitions if d[0] in ("pow", "comm")}
    out = []
    for i in range(source.n):
        if ("pow", i) in defined:
            continue
        rel = col.mul(col.power(phi[i], p), col.inv(evaluate(source.powers[i])))
        out.append(rel)
    for j in range(source.n):
        for i in range(j):
            if ("comm", j, i) in defined:
                continue
            rel = col.mul(col.comm(phi[j], phi[i]), col.inv(evaluate(source.comms[j][i])))
            out.append(rel)
    for rel in out:
        if any(rel[:n_t]):
            raise AssertionError("relation of a later level does not map into the multiplicator")
    return [rel[n_t:] for rel in out]


def h2_inflation_rank(t: PQuotientTower, from_level: int, to_level: int) -> int:
    """dim of the image of H^2(level a) -> H^2(level b) via multiplicator ranks."""
    a, b = t.level(from_level), t.level(to_level)
    rels = _relation_images(b, a)
    m = h2_dim(a)
    if not rels or m == 0:
        return 0
    return rank(FpMatrix(t.p, rels, rows=len(rels), cols=m))


def bar_inflation_rank(t: PQuotientTower, from_level: int, to_level: int, n: int, budget: Budget | None = None) -> int:
    """Pull cocycles of level a back along the projection, reduce mod coboundaries of level b."""
    budget = budget or default_budget()
    a, b = t.level(from_level), t.level(to_level)
    p = t.p
    Na, Nb = a.order, b.order
    budget.check_entries(Na ** (n + 1), Na ** n, "source cocycle matrix")
    budget.check_entries(Nb ** n, Nb ** (n - 1) if n else 1, "target coboundary matrix")
    ga = GroupTable.from_pc(a, budget)
    z = nullspace(bar_differential(ga, p, n, budget))
    shift = p ** (b.n - a.n)
    x = np.arange(Nb ** n, dtype=np.int64)
    src = np.zeros_like(x)
    for k in range(n):
        digit = (x // Nb ** (n - 1 - k)) % Nb
        src = src * Na + digit // shift
    pulled = FpMatrix(p, z.array[src, :], rows=Nb ** n, cols=z.cols)
    if n == 0:
        return rank(pulled)
    gb = GroupTable.from_pc(b, budget)
    boundary = bar_differential(gb, p, n - 1, budget)
    return rank(hstack(p, [boundary, pulled], Nb ** n)) - rank(boundary)


def inflation_image_dim(
    t: PQuotientTower, from_level: int, to_level: int, n: int, method: str = "auto", budget: Budget | None = None
) -> int:
    if from_level > to_level:
        raise ValueError("inflation goes from a lower level to a higher one")
    if method not in ("auto", "bar", "multiplicator"):
        raise ValueError(f"unknown method {method!r}")
    if method == "bar":
        return bar_inflation_rank(t, from_level, to_level, n, budget)
    if n == 0:
        return 1
    if n == 1:
        # every homomorphism to F_p factors through level 1
        return h1_dim(t.level(from_level))
    if n == 2:
        return h2_inflation_rank(t, from_level, to_level)
    if method == "multiplicator":
        raise ValueError("the multiplicator route only covers degrees up to 2")
    return bar_inflation_rank(t, from_level, to_level, n, budget)


def level_dim(pc: PcPresentation, n: int, budget: Budget | None = None) -> int:
    if n == 0:
        return 1
    if n == 1:
        return h1_dim(pc)
    if n == 2:
        return h2_dim(pc)
    return cohomology_dims_finite(pc, n, budget)[n]


@dataclass
class TowerCohomology:
    p: int
    degree: int
    level_dims: list[int | None]
    inflation_image_dims: list[int | None]
    stable: bool
    estimate: int | None
    truncated: bool
    window: int = 2
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "degree": self.degree,
            "level_dims": self.level_dims,
            "inflation_image_dims": self.inflation_image_dims,
            "stable": self.stable,
            "estimate": self.estimate,
            "truncated": self.truncated,
            "window": self.window,
            "notes": self.notes,
        }


def tower_colimit_estimate(t: PQuotientTower, n: int, k: int = 2, budget: Budget | None = None) -> TowerCohomology:
    """Images of H^n(level c) in H^n(top level), c = 1..top.

    The estimate reads the sequence for c < top (the top level maps onto
    its own cohomology, which says nothing about the colimit) and is
    flagged stable when its last ``k`` entries agree.
    """
    if t.nlevels < 1:
        raise ValueError("tower has no levels")
    notes: list[str] = []
    dims: list[int | None] = []
    for c in range(1, t.nlevels + 1):
        try:
            dims.append(level_dim(t.level(c), n, budget))
        except BudgetExceeded as exc:
            dims.append(None)
            notes.append(f"level {c}: {exc}")
    # the highest level whose cohomology we can reach serves as the top
    top = max((c for c in range(1, t.nlevels + 1) if dims[c - 1] is not None), default=None)
    images: list[int | None] = [None] * t.nlevels
    if top is not None:
        for c in range(1, top + 1):
            try:
                images[c - 1] = inflation_image_dim(t, c, top, n, budget=budget)
            except BudgetExceeded as exc:
                notes.append(f"inflation {c}->{top}: {exc}")
    seq = [x for x in images[: (top or 1) - 1] if x is not None]
    if n <= 1 and top is not None:
        stable, estimate = True, images[0]
    elif len(seq) >= k and len(set(seq[-k:])) == 1:
        stable, estimate = True, seq[-1]
    else:
        stable, estimate = False, (seq[-1] if seq else None)
    truncated = t.truncated or top is None or top < t.nlevels
    if top is None:
        raise BudgetExceeded(f"no level of the tower admits H^{n} within budget")
    if top == 1 and n >= 2:
        notes.append("only one level within budget")
    return TowerCohomology(t.p, n, dims, images, stable, estimate, truncated, k, notes)


def presentation_h1_h2_bounds(pres: GroupPresentation, p: int):
    """(h1, h2_upper) from the exponent-sum matrix of the relators mod p."""
    m = pres.exponent_matrix()
    if pres.relators:
        r = rank(FpMatrix(p, m, rows=len(pres.relators), cols=pres.ngens))
        zero = not any(x % p for row in m for x in row)
    else:
        r, zero = 0, True
    h1 = pres.ngens - r
    return h1, (len(pres.relators) if zero else UNAVAILABLE)

"""Dimension bookkeeping for long exact sequences.

Exactness is encoded as rank constraints: at every node of an exact
sequence, dim = rank(arrow in) + rank(arrow out).  The Wang sequence of an
extension N -> G -> Z and the Mayer-Vietoris sequences of amalgams and HNN
extensions are reduced to such constraints plus (co)invariants of cyclic
actions on F_p vector spaces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fp_linalg import CohomologyDims, FpMatrix, det, hstack, inverse, kernel_dim, nullspace, rank


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicActionModule:
    """V = F_p^k with a generator of Z acting by the invertible matrix ``action``."""

    p: int
    action: FpMatrix

    def __post_init__(self):
        a = self.action
        if a.p != self.p or a.rows != a.cols:
            raise ValueError("action must be a square matrix over F_p")
        if a.rows and det(a) == 0:
            raise ValueError("action is not invertible mod p")

    @property
    def dim(self) -> int:
        return self.action.rows

    def _shifted(self) -> FpMatrix:
        return self.action - FpMatrix.identity(self.p, self.dim)

    def invariant_basis(self) -> FpMatrix:
        return nullspace(self._shifted())


def cyclic_invariants_dim(m: CyclicActionModule) -> int:
    """H^0(Z, V) = ker(M - I)."""
    return kernel_dim(m._shifted()) if m.dim else 0


def cyclic_coinvariants_dim(m: CyclicActionModule) -> int:
    """H^1(Z, V) = coker(M - I)."""
    return m.dim - rank(m._shifted()) if m.dim else 0


def exterior_power(m: FpMatrix, k: int) -> FpMatrix:
    """Matrix of the k-th exterior power on the basis of sorted k-subsets."""
    n = m.rows
    subsets = list(itertools.combinations(range(n), k))
    a = m.array
    out = np.zeros((len(subsets), len(subsets)), dtype=np.int64)
    for r, rows in enumerate(subsets):
        for c, cols in enumerate(subsets):
            out[r, c] = det(FpMatrix(m.p, a[np.ix_(rows, cols)], rows=k, cols=k)) if k else 1
    return FpMatrix(m.p, out, rows=len(subsets), cols=len(subsets))


def torus_action_modules(action: Sequence[Sequence[int]], p: int) -> list[CyclicActionModule]:
    """Action on H^k(Z^r, F_p), k = 0..r, induced by an automorphism of Z^r.

    ``action`` maps exponent column vectors of N = Z^r.  H^1 is the dual,
    on which the generator acts contragrediently (inverse transpose); H^k
    is the k-th exterior power of that, so the top degree carries the
    determinant character.
    """
    a = FpMatrix(p, action)
    contra = inverse(a).T
    return [CyclicActionModule(p, exterior_power(contra, k)) for k in range(a.rows + 1)]


def wang_dims(modules: Sequence[CyclicActionModule | None], maxdeg: int) -> CohomologyDims:
    """dim H^n(G) = coinv H^(n-1)(N) + inv H^n(N) for N -> G -> Z.

    ``modules[k]`` is H^k(N) with its action; degrees past the end of the
    list are zero.  A ``None`` entry inside the list is a missing action.
    """
    if not modules:
        raise ValueError("need at least H^0(N)")
    p = modules[0].p if modules[0] is not None else None
    for k, m in enumerate(modules):
        if m is None:
            raise ValueError(f"missing action matrix on H^{k}(N)")
    if modules[0].dim != 1 or not modules[0].action == FpMatrix.identity(p, 1):
        raise ValueError("the action on H^0(N) must be trivial")

    def inv(k):
        return cyclic_invariants_dim(modules[k]) if 0 <= k < len(modules) else 0

    def coinv(k):
        return cyclic_coinvariants_dim(modules[k]) if 0 <= k < len(modules) else 0

    return CohomologyDims(p, {n: coinv(n - 1) + inv(n) for n in range(maxdeg + 1)})


def wang_e11_part(modules: Sequence[CyclicActionModule]) -> int:
    """The H^1(Z, H^1(N)) summand of H^2(G)."""
    return cyclic_coinvariants_dim(modules[1]) if len(modules) > 1 else 0


def invariant_sum_rank(module_lists: Sequence[Sequence[CyclicActionModule]], k: int) -> int:
    """dim of the sum of the invariant subspaces of several actions on H^k(N).

    For extensions N -> G_i -> Z sharing N, restriction H^k(G_i) -> H^k(N)
    has image the invariants, so this is the rank of the restriction from
    the direct sum of the H^k(G_i).
    """
    mods = [ms[k] for ms in module_lists if k < len(ms)]
    if not mods:
        return 0
    p = mods[0].p
    bases = [m.invariant_basis() for m in mods]
    return rank(hstack(p, bases, mods[0].dim))


# Ledgers ----------------------------------------------------------------------

@dataclass(frozen=True)
class ExactLedger:
    """Nodes of an exact sequence with dims (None = unknown) and arrow ranks.

    ``ranks[i]`` is the rank of the arrow from node i to node i+1.  When
    ``bounded`` the sequence starts and ends with 0; otherwise it is a
    segment of a longer exact sequence.
    """

    nodes: tuple[str, ...]
    dims: tuple[int | None, ...]
    ranks: tuple[int | None, ...] = ()
    bounded: bool = True

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "dims", tuple(self.dims))
        ranks = tuple(self.ranks) if self.ranks else (None,) * max(0, len(self.nodes) - 1)
        object.__setattr__(self, "ranks", ranks)
        if len(self.dims) != len(self.nodes):
            raise LedgerError("one dimension per node required")
        if len(self.ranks) != max(0, len(self.nodes) - 1):
            raise LedgerError("one rank (or null) per arrow required")
        for d in self.dims:
            if d is not None and d < 0:
                raise LedgerError("dimensions must be nonnegative")

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "nodes": list(self.nodes),
            "dims": list(self.dims),
            "ranks": list(self.ranks),
            "bounded": self.bounded,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExactLedger":
        if data.get("format", 1) != 1:
            raise LedgerError(f"unsupported ledger format {data.get('format')}")
        try:
            return cls(
                tuple(data["nodes"]),
                tuple(data["dims"]),
                tuple(data.get("ranks") or ()),
                bool(data.get("bounded", True)),
            )
        except KeyError as exc:
            raise LedgerError(f"ledger is missing field {exc}") from None

    def with_dim(self, i: int, value: int) -> "ExactLedger":
        dims = list(self.dims)
        dims[i] = value
        return ExactLedger(self.nodes, tuple(dims), self.ranks, self.bounded)


def load_ledger(path: str) -> ExactLedger:
    with open(path) as fh:
        return ExactLedger.from_dict(json.load(fh))


@dataclass(frozen=True)
class LedgerVerdict:
    satisfiable: bool
    failing_node: str | None = None
    reason: str = ""
    lower_bounds: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return "Satisfiable" if self.satisfiable else "Violated"

    def to_dict(self) -> dict:
        return {
            "verdict": self.label,
            "failing_node": self.failing_node,
            "reason": self.reason,
            "lower_bounds": dict(sorted(self.lower_bounds.items())),
        }


def _propagate(l: ExactLedger, cap: int) -> tuple[bool, int | None, str]:
    """Run the feasible-rank sets through the ledger.

    Returns (ok, index of failing node, reason).
    """
    n = len(l.nodes)
    if n == 0:
        return True, None, ""
    first = l.dims[0]
    if l.bounded:
        incoming = {0}
    else:
        incoming = set(range((first if first is not None else cap) + 1))
    for i in range(n):
        d = l.dims[i]
        out_known = l.ranks[i] if i < n - 1 else None
        nxt_dim = l.dims[i + 1] if i < n - 1 else None
        outgoing = set()
        for r_in in incoming:
            if d is not None:
                cands = [d - r_in] if d - r_in >= 0 else []
            else:
                cands = range(cap + 1)
            for r in cands:
                if out_known is not None and r != out_known:
                    continue
                if i < n - 1 and nxt_dim is not None and r > nxt_dim:
                    continue
                outgoing.add(r)
        if not outgoing:
            if d is not None and all(d - r < 0 for r in incoming):
                why = f"rank into {l.nodes[i]} exceeds its dimension {d}"
            else:
                why = f"no rank out of {l.nodes[i]} fits the next dimension or the stated rank"
            return False, i, why
        if i == n - 1 and l.bounded and 0 not in outgoing:
            return False, i, f"exactness forces a nonzero map out of the last node {l.nodes[i]}"
        incoming = outgoing
    return True, None, ""


def ledger_check(l: ExactLedger) -> LedgerVerdict:
    """Satisfiable iff ranks exist making every node exact.

    For bounded ledgers with all dims known this includes the alternating
    sum condition.  Unknown dims get the smallest value compatible with
    exactness as a lower bound.
    """
    for i, r in enumerate(l.ranks):
        if r is None:
            continue
        a, b = l.dims[i], l.dims[i + 1]
        if r < 0 or (a is not None and r > a) or (b is not None and r > b):
            return LedgerVerdict(False, l.nodes[i], f"rank {r} of arrow out of {l.nodes[i]} is out of range")
    if l.bounded and all(d is not None for d in l.dims):
        alt = sum((-1) ** i * d for i, d in enumerate(l.dims))
        if alt != 0:
            ok, where, why = _propagate(l, 0)
            node = l.nodes[where] if where is not None else l.nodes[-1]
            return LedgerVerdict(False, node, f"alternating sum is {alt}" + (f"; {why}" if why else ""))
    cap = sum(d for d in l.dims if d is not None) + sum(r for r in l.ranks if r is not None) + 1
    ok, where, why = _propagate(l, cap)
    if not ok:
        return LedgerVerdict(False, l.nodes[where], why)
    bounds = {}
    for i, d in enumerate(l.dims):
        if d is None:
            for v in range(2 * cap + 1):
                if _propagate(l.with_dim(i, v), cap)[0]:
                    bounds[l.nodes[i]] = v
                    break
    return LedgerVerdict(True, None, "", bounds)


def mv_h2_lower_bound(dim_h2_factors: Sequence[int], dim_h2_amalgam: int) -> int:
    """Exactness of H^2(G) -> H^2(G_1) + H^2(G_2) -> H^2(A) bounds dim H^2(G) below."""
    return max(0, sum(dim_h2_factors) - dim_h2_amalgam)


# Mayer-Vietoris solvers ---------------------------------------------------------

def _get(dims: Sequence[int], n: int) -> int:
    return dims[n] if 0 <= n < len(dims) else 0


def amalgam_dims(
    left: Sequence[int], right: Sequence[int], edge: Sequence[int], restriction_ranks: Sequence[int], maxdeg: int
) -> list[int]:
    """dim H^n(G_1 *_A G_2) from the MV sequence with known restriction ranks.

    ``restriction_ranks[n]`` is the rank of H^n(G_1) + H^n(G_2) -> H^n(A).
    """
    out = []
    for n in range(maxdeg + 1):
        coker = _get(edge, n - 1) - (_get(restriction_ranks, n - 1) if n >= 1 else 0)
        ker = _get(left, n) + _get(right, n) - _get(restriction_ranks, n)
        out.append(coker + ker)
    return out


def hnn_dims(base: Sequence[int], assoc: Sequence[int], difference_ranks: Sequence[int], maxdeg: int) -> list[int]:
    """dim H^n(G_phi) from the MV sequence for an HNN extension.

    ``difference_ranks[n]`` is the rank of res - phi^* res : H^n(G) -> H^n(H).
    """
    out = []
    for n in range(maxdeg + 1):
        coker = _get(assoc, n - 1) - (_get(difference_ranks, n - 1) if n >= 1 else 0)
        ker = _get(base, n) - _get(difference_ranks, n)
        out.append(coker + ker)
    return out


def amalgam_ledger(
    names: tuple[str, str, str, str],
    group: Sequence[int | None],
    left: Sequence[int],
    right: Sequence[int],
    edge: Sequence[int],
    restriction_ranks: Sequence[int | None] | None,
    maxdeg: int,
) -> ExactLedger:
    """0 -> H^0(G) -> H^0(G1)+H^0(G2) -> H^0(A) -> H^1(G) -> ... -> H^maxdeg(A)."""
    g, l1, l2, a = names
    nodes, dims, ranks = [], [], []
    for n in range(maxdeg + 1):
        nodes += [f"H^{n}({g})", f"H^{n}({l1})+H^{n}({l2})", f"H^{n}({a})"]
        dims += [_get(group, n) if n < len(group) else None, _get(left, n) + _get(right, n), _get(edge, n)]
        rho = restriction_ranks[n] if restriction_ranks is not None and n < len(restriction_ranks) else None
        ranks += [None, rho, None]
    ranks = ranks[:-1]
    top_zero = _get(edge, maxdeg) == 0 and all(
        _get(x, k) == 0 for x in (left, right, edge) for k in range(maxdeg + 1, maxdeg + 3)
    )
    return ExactLedger(tuple(nodes), tuple(dims), tuple(ranks), bounded=top_zero)


def hnn_ledger(
    names: tuple[str, str, str],
    group: Sequence[int | None],
    base: Sequence[int],
    assoc: Sequence[int],
    difference_ranks: Sequence[int | None] | None,
    maxdeg: int,
) -> ExactLedger:
    """0 -> H^0(G_phi) -> H^0(G) -> H^0(H) -> H^1(G_phi) -> ..."""
    gp, b, h = names
    nodes, dims, ranks = [], [], []
    for n in range(maxdeg + 1):
        nodes += [f"H^{n}({gp})", f"H^{n}({b})", f"H^{n}({h})"]
        dims += [_get(group, n) if n < len(group) else None, _get(base, n), _get(assoc, n)]
        sig = difference_ranks[n] if difference_ranks is not None and n < len(difference_ranks) else None
        ranks += [None, sig, None]
    ranks = ranks[:-1]
    top_zero = _get(assoc, maxdeg) == 0 and all(
        _get(x, k) == 0 for x in (base, assoc) for k in range(maxdeg + 1, maxdeg + 3)
    )
    return ExactLedger(tuple(nodes), tuple(dims), tuple(ranks), bounded=top_zero)


def mutate_ledger(l: ExactLedger, index: int, delta: int = 1) -> ExactLedger:
    """Copy of ``l`` with one known dimension perturbed (for mutation tests)."""
    d = l.dims[index]
    if d is None:
        raise LedgerError("cannot perturb an unknown dimension")
    return l.with_dim(index, d + delta if d + delta >= 0 else d + 1)

"""Independent brute-force oracles used by the tests.

Nothing here imports the package: the groups are explicit finite groups
(tuples with a multiplication rule) and the lower exponent-p central series
is computed by subgroup closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Hashable, Sequence


@dataclass
class FiniteGroup:
    mul: Callable[[Hashable, Hashable], Hashable]
    identity: Hashable
    gens: tuple

    def inv(self, a):
        # brute force: the powers of a cycle back to the identity
        prev, cur = self.identity, a
        while cur != self.identity:
            prev, cur = cur, self.mul(cur, a)
        return prev

    def power(self, a, k):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def comm(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))


def _closure(g: FiniteGroup, gens) -> frozenset:
    """Subgroup generated by ``gens``, grown one generator at a time."""
    elems = {g.identity}
    basis: list = []
    for x in gens:
        if x in elems:
            continue
        basis.append(x)
        frontier = list(elems)
        while frontier:
            nxt = []
            for a in frontier:
                for s in basis:
                    b = g.mul(a, s)
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
    return frozenset(elems)


def lambda_series_orders(g: FiniteGroup, p: int, maxclass: int) -> list[int]:
    """|G / lambda_(c+1)(G)| for c = 1..maxclass, by brute force."""
    whole = _closure(g, g.gens)
    lam = whole
    orders = []
    for _ in range(maxclass):
        cands = {g.comm(a, s) for a in lam for s in g.gens} | {g.power(a, p) for a in lam}
        sub = _closure(g, sorted(cands, key=repr))
        while True:
            conj = {g.mul(g.mul(g.inv(s), a), s) for a in sub for s in g.gens}
            if conj <= sub:
                break
            sub = _closure(g, sorted(sub | conj, key=repr))
        lam = sub
        orders.append(len(whole) // len(lam))
    return orders


def cyclic_group(m: int) -> FiniteGroup:
    return FiniteGroup(lambda a, b: (a + b) % m, 0, (1,))


def abelian_group(moduli: Sequence[int]) -> FiniteGroup:
    moduli = tuple(moduli)
    gens = tuple(tuple(1 if i == k else 0 for i in range(len(moduli))) for k in range(len(moduli)))
    return FiniteGroup(
        lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, moduli)),
        (0,) * len(moduli),
        gens,
    )


def unitriangular_group(m: int) -> FiniteGroup:
    """UT_3(Z/m) as triples (a, b, c) for [[1, a, c], [0, 1, b], [0, 0, 1]]."""

    def mul(u, v):
        return ((u[0] + v[0]) % m, (u[1] + v[1]) % m, (u[2] + v[2] + u[0] * v[1]) % m)

    return FiniteGroup(mul, (0, 0, 0), ((1, 0, 0), (0, 1, 0)))


def heisenberg_model(m: int) -> FiniteGroup:
    """UT_3(Z/m) with the three generators x = centre, y, t of the builtin."""
    g = unitriangular_group(m)
    return FiniteGroup(g.mul, g.identity, ((0, 0, 1), (1, 0, 0), (0, 1, 0)))


def necklace_count(d: int, k: int) -> int:
    """Witt's formula: rank of gamma_k / gamma_(k+1) of the free group of rank d."""
    total = 0
    for e in range(1, k + 1):
        if k % e == 0:
            total += _mobius(k // e) * d**e
    return total // k


def _mobius(n: int) -> int:
    out, q = 1, 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            out = -out
        q += 1
    return -out if n > 1 else out


def free_group_lambda_exponents(d: int, maxclass: int) -> list[int]:
    """Order exponents of F_d / lambda_(c+1): layer c has rank sum_(k<=c) M_d(k)."""
    layers = [sum(necklace_count(d, k) for k in range(1, c + 1)) for c in range(1, maxclass + 1)]
    return [sum(layers[:c]) for c in range(1, maxclass + 1)]


def elementary_abelian_cohomology(r: int, n: int) -> int:
    """dim H^n((Z/p)^r; F_p), Poincare series 1 / (1 - t)^r."""
    return comb(n + r - 1, n) if r else int(n == 0)


def cyclic_cohomology(n: int) -> int:
    """dim H^n(Z/p^k; F_p) = 1 for every n."""
    return 1


def kunneth(a: Sequence[int], b: Sequence[int], n: int) -> int:
    return sum(a[i] * b[n - i] for i in range(n + 1) if i < len(a) and n - i < len(b))


def clique_count_brute(vertices: Sequence[str], edges, k: int) -> int:
    from itertools import combinations

    es = {frozenset(e) for e in edges}
    return sum(1 for c in combinations(vertices, k) if all(frozenset(pr) in es for pr in combinations(c, 2)))

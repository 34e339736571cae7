"""Exact linear algebra over the prime field F_p.

Matrices are dense numpy ``int64`` arrays whose entries are kept reduced
into ``[0, p)``.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .budget import Budget, default_budget


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= 2**31:
        raise ValueError("prime too large for int64 elimination")


class FpMatrix:
    """A rows x cols matrix over F_p with row-major residues."""

    __slots__ = ("p", "_a")

    def __init__(self, p: int, data, rows: int | None = None, cols: int | None = None):
        _check_prime(p)
        a = np.array(data, dtype=np.int64)
        if rows is not None or cols is not None:
            a = a.reshape(rows if rows is not None else -1, cols if cols is not None else -1)
        if a.ndim != 2:
            if a.size == 0 and rows is not None and cols is not None:
                a = a.reshape(rows, cols)
            else:
                raise ValueError("matrix data must be two dimensional")
        a = np.mod(a, p)
        a.setflags(write=False)
        self.p = p
        self._a = a

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.ravel())

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def is_zero(self) -> bool:
        return not self._a.any()

    def _same_field(self, other: "FpMatrix") -> None:
        if other.p != self.p:
            raise ValueError("matrices over different primes")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return FpMatrix(self.p, _matmul_mod(self._a, other._a, self.p))

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix(self.p, self._a + other._a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        return FpMatrix(self.p, self._a - other._a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self._a.shape == other._a.shape and bool((self._a == other._a).all())

    def __hash__(self) -> int:
        return hash((self.p, self._a.shape, self._a.tobytes()))

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.p, self._a.T)

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self._a.tolist()})"


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 products are exact while every partial sum stays below 2^53,
    # which lets BLAS do the work; chunk the inner dimension to guarantee it.
    limit = max(1, (2**52) // max(1, (p - 1) ** 2))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, max(a.shape[1], 1), limit):
        fa = a[:, start:start + limit].astype(np.float64)
        fb = b[start:start + limit].astype(np.float64)
        out = np.mod(out + np.rint(fa @ fb).astype(np.int64), p)
    return out


def _eliminate(a: np.ndarray, p: int, full: bool) -> tuple[np.ndarray, list[int]]:
    """Gauss(-Jordan) elimination in place; pivot = first nonzero entry."""
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for c in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(a[row:, c])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, c]), -1, p)
        if inv != 1:
            a[row, c:] = (a[row, c:] * inv) % p
        if full:
            targets = np.flatnonzero(a[:, c])
            targets = targets[targets != row]
        else:
            targets = row + 1 + np.flatnonzero(a[row + 1:, c])
        if targets.size:
            factors = a[targets, c].copy()
            a[np.ix_(targets, np.arange(c, ncols))] = (
                a[targets, c:] - np.outer(factors, a[row, c:])
            ) % p
        pivots.append(c)
        row += 1
    return a, pivots


def _row_basis(a: np.ndarray, p: int, block: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon basis of the row space of ``a`` (rows sorted by pivot).

    Rows are processed in blocks.  Each block is first reduced against the
    basis found so far with one matrix product, so dense elimination only
    ever runs on the handful of rows that contribute new pivots.
    """
    nrows, ncols = a.shape
    block = block or max(64, 2 * ncols)
    basis = np.zeros((0, ncols), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, nrows, block):
        chunk = np.array(a[start:start + block], dtype=np.int64) % p
        if pivots:
            chunk = (chunk - _matmul_mod(chunk[:, pivots], basis, p)) % p
        keep = chunk.any(axis=1)
        if not keep.any():
            continue
        new, new_piv = _eliminate(chunk[keep], p, full=True)
        new = new[: len(new_piv)]
        if pivots:
            basis = (basis - _matmul_mod(basis[:, new_piv], new, p)) % p
        basis = np.vstack([basis, new])
        pivots = pivots + new_piv
        order = np.argsort(pivots, kind="stable")
        basis = basis[order]
        pivots = [pivots[k] for k in order]
        if len(pivots) == ncols:
            break
    return basis, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    basis, pivots = _row_basis(m.array, m.p)
    out = np.zeros((m.rows, m.cols), dtype=np.int64)
    out[: len(pivots)] = basis
    return FpMatrix(m.p, out), pivots


def rank(m: FpMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    a = m.array if m.rows >= m.cols else m.array.T
    return len(_row_basis(a, m.p)[1])


def kernel_dim(m: FpMatrix) -> int:
    return m.cols - rank(m)


def nullspace(m: FpMatrix) -> FpMatrix:
    """Basis of the right kernel, returned as the columns of a matrix."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = np.zeros((m.cols, len(free)), dtype=np.int64)
    a = red.array
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = -a[r, f]
    return FpMatrix(m.p, basis, rows=m.cols, cols=len(free))


def hstack(p: int, blocks: Sequence[FpMatrix], rows: int) -> FpMatrix:
    arrays = [b.array for b in blocks if b.cols]
    if not arrays:
        return FpMatrix.zeros(p, rows, 0)
    return FpMatrix(p, np.hstack(arrays))


def vstack(p: int, blocks: Sequence[FpMatrix], cols: int) -> FpMatrix:
    arrays = [b.array for b in blocks if b.rows]
    if not arrays:
        return FpMatrix.zeros(p, 0, cols)
    return FpMatrix(p, np.vstack(arrays))


def inverse(m: FpMatrix) -> FpMatrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    aug = np.hstack([m.array, np.eye(n, dtype=np.int64)])
    red, pivots = _eliminate(aug, m.p, full=True)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return FpMatrix(m.p, red[:, n:])


def det(m: FpMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = np.array(m.array, dtype=np.int64)
    p = m.p
    n = m.rows
    result = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            result = -result
        result = (result * int(a[c, c])) % p
        inv = pow(int(a[c, c]), -1, p)
        below = c + 1 + np.flatnonzero(a[c + 1:, c])
        if below.size:
            f = (a[below, c] * inv) % p
            a[below, c:] = (a[below, c:] - np.outer(f, a[c, c:])) % p
    return result % p


@dataclass(frozen=True)
class CochainComplex:
    """Cochain spaces of dimensions ``dims[0..D]`` with d_n : C^n -> C^(n+1)."""

    p: int
    dims: tuple[int, ...]
    differentials: tuple[FpMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(0, len(self.dims) - 1):
            raise ValueError("need exactly one differential between consecutive degrees")
        for n, d in enumerate(self.differentials):
            if d.p != self.p:
                raise ValueError(f"d_{n} is over the wrong prime")
            if (d.rows, d.cols) != (self.dims[n + 1], self.dims[n]):
                raise ValueError(
                    f"d_{n} has shape {d.rows}x{d.cols}, expected {self.dims[n + 1]}x{self.dims[n]}"
                )

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def d_squared_violations(self) -> list[int]:
        """Degrees n with d_(n+1) d_n != 0 (entry-exact check)."""
        bad = []
        for n in range(len(self.differentials) - 1):
            if not (self.differentials[n + 1] @ self.differentials[n]).is_zero():
                bad.append(n)
        return bad


@dataclass(frozen=True)
class CohomologyDims:
    p: int
    dims: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, n: int) -> int:
        return self.dims[n]

    def as_list(self) -> list[int]:
        return [self.dims[n] for n in sorted(self.dims)]


def cohomology_of_complex(c: CochainComplex, n: int) -> int:
    """dim H^n = dim ker d_n - rank d_(n-1), with d_(-1) the zero map."""
    if n < 0 or n > c.top_degree - 1:
        raise IndexError(f"degree {n} out of range for a complex with top degree {c.top_degree}")
    kernel = kernel_dim(c.differentials[n])
    image = rank(c.differentials[n - 1]) if n > 0 else 0
    return kernel - image


def complex_cohomology(c: CochainComplex, degrees: Iterable[int] | None = None) -> CohomologyDims:
    if degrees is None:
        degrees = range(c.top_degree)
    return CohomologyDims(c.p, {n: cohomology_of_complex(c, n) for n in degrees})


def check_budget(rows: int, cols: int, budget: Budget | None = None, what: str = "matrix") -> None:
    (budget or default_budget()).check_entries(rows, cols, what)

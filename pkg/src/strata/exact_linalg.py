"""Exact integer and rational linear algebra.

Matrices are plain lists of integer rows.  Nothing here ever touches a float.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

IntMatrix = List[List[int]]
IntVector = Sequence[int]


def _copy(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(map(int, row)) for row in M]


def _check_rect(M: Sequence[Sequence[int]]) -> int:
    if not M:
        return 0
    n = len(M[0])
    for row in M:
        if len(row) != n:
            raise ValueError("ragged matrix: rows of different length")
    return n


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.  The form is canonical:
    two matrices have the same row lattice iff their HNFs agree after
    dropping zero rows.
    """
    ncols = _check_rect(M)
    m = len(M)
    H = _copy(M)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            piv = H[r][c]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // piv
                    if q:
                        Hi, Hr = H[i], H[r]
                        for k in range(c, ncols):
                            Hi[k] -= q * Hr[k]
                        Ui, Ur = U[i], U[r]
                        for k in range(m):
                            Ui[k] -= q * Ur[k]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


class Lattice:
    """Row lattice of an integer matrix, held in Hermite normal form."""

    __slots__ = ("dim", "rows", "pivots")

    def __init__(self, basis: Sequence[Sequence[int]], dim: Optional[int] = None):
        ncols = _check_rect(basis)
        if basis:
            if dim is not None and dim != ncols:
                raise ValueError(f"basis has {ncols} columns, expected {dim}")
            dim = ncols
        self.dim = dim
        H, _ = hermite_normal_form(basis)
        self.rows = [row for row in H if any(row)]
        self.pivots = [next(j for j, x in enumerate(row) if x) for row in self.rows]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __contains__(self, v: IntVector) -> bool:
        if self.dim is not None and len(v) != self.dim:
            raise ValueError(f"vector of dimension {len(v)} tested against lattice in dimension {self.dim}")
        w = list(v)
        start = 0
        for row, j in zip(self.rows, self.pivots):
            for k in range(start, j):
                if w[k]:
                    return False
            q, rem = divmod(w[j], row[j])
            if rem:
                return False
            if q:
                for k in range(j, len(w)):
                    w[k] -= q * row[k]
            start = j + 1
        return not any(w[start:])


def lattice_contains(basis: Sequence[Sequence[int]], v: IntVector) -> bool:
    """True iff ``v`` is an integer combination of the rows of ``basis``."""
    return v in Lattice(basis, dim=None if basis else len(v))


def integer_rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by fraction-free elimination."""
    ncols = _check_rect(M)
    A = [list(row) for row in M if any(row)]
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        pr = A[rank]
        a = pr[c]
        for i in range(rank + 1, len(A)):
            b = A[i][c]
            if b:
                A[i] = [a * x - b * y for x, y in zip(A[i], pr)]
        rank += 1
        if rank == len(A):
            break
    return rank


def _phase_one(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    """Find x >= 0 with A x = b, or None.  Exact phase-one simplex, Bland's rule."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row, rhs = list(A[i]), b[i]
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the auxiliary objective: minimise the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for k in range(width + 1):
            cost[k] -= row[k]
    for i in range(m):
        cost[n + i] += 1
    while True:
        enter = next((k for k in range(width) if cost[k] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # cannot happen: objective bounded below by 0
            break
        prow = rows[leave]
        piv = prow[enter]
        prow = [x / piv for x in prow]
        rows[leave] = prow
        for i, row in enumerate(rows):
            if i != leave and row[enter]:
                f = row[enter]
                rows[i] = [x - f * y for x, y in zip(row, prow)]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return x


def relative_interior_witness(points: Sequence[IntVector]) -> Optional[List[Fraction]]:
    """Strictly positive convex weights putting the barycentre at zero, if any.

    Zero lies in the relative interior of conv(points) exactly when the cone
    spanned by the points is a linear subspace, i.e. when ``-sum(points)`` is a
    nonnegative combination ``sum(nu_p * p)``.  Then ``1 + nu_p`` are positive
    weights with zero barycentre; normalising gives the witness.
    """
    if not points:
        raise ValueError("zero_in_relative_interior needs at least one point")
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise ValueError("points of mixed dimension")
    k = len(points)
    A = [[Fraction(p[i]) for p in points] for i in range(dim)]
    b = [Fraction(-sum(p[i] for p in points)) for i in range(dim)]
    nu = _phase_one(A, b) if dim else [Fraction(0)] * k
    if nu is None:
        return None
    lam = [1 + x for x in nu]
    total = sum(lam)
    return [x / total for x in lam]


def zero_in_relative_interior(points: Sequence[IntVector]) -> bool:
    """True iff strictly positive rationals summing to 1 weight the points to 0."""
    return relative_interior_witness(points) is not None

"""Exact integer and rational linear algebra.

Everything downstream (balancing residuals, kernels of boundary maps,
holonomy fixed spaces) must produce exact zeros, so no floating point is
used anywhere.  Matrices are numpy arrays with ``dtype=object`` holding
Python ints and :class:`fractions.Fraction`; vectors at the API boundary
are plain tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import IrrationalData, ZeroVector

Rational = Fraction

RING_RATIONALS = "rationals"
RING_INTEGERS = "integers"


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts ints, Fractions and strings like ``"3/4"``.  Floats are
    rejected: they would smuggle binary rounding into the exact core.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise IrrationalData(f"cannot parse rational from {x!r}") from exc
    raise IrrationalData(f"not an exact rational: {x!r} ({type(x).__name__})")


def as_int(x) -> int:
    """Coerce ``x`` to an int, requiring an integer value."""
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    raise IrrationalData(f"not an integer: {x!r}")


def vector(entries: Iterable) -> tuple:
    """An immutable exact vector (tuple of ints/Fractions)."""
    out = []
    for e in entries:
        f = as_fraction(e)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def matrix(rows: Sequence[Sequence]) -> np.ndarray:
    """A 2-d object array from nested sequences of exact entries."""
    rows = [list(r) for r in rows]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
    m = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, e in enumerate(r):
            f = as_fraction(e)
            m[i, j] = int(f) if f.denominator == 1 else f
    return m


def zeros(nrows: int, ncols: int) -> np.ndarray:
    m = np.empty((nrows, ncols), dtype=object)
    m[:, :] = 0
    return m


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def mat_vec(M: np.ndarray, v: Sequence) -> tuple:
    """Exact matrix-vector product as a tuple."""
    return tuple(sum(M[i, j] * v[j] for j in range(M.shape[1])) for i in range(M.shape[0]))


def det(M: np.ndarray) -> Fraction:
    """Exact determinant by fraction-aware Gaussian elimination."""
    n, m = M.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    A = [[Fraction(M[i, j]) for j in range(n)] for i in range(n)]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        result *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col] != 0:
                factor = A[r][col] * inv
                for c in range(col, n):
                    A[r][c] -= factor * A[col][c]
    return sign * result


def is_unimodular(M: np.ndarray) -> bool:
    """True iff M is a square integer matrix with determinant +-1."""
    n, m = M.shape
    if n != m:
        return False
    for i in range(n):
        for j in range(n):
            if not isinstance(M[i, j], (int, np.integer)) and not (
                isinstance(M[i, j], Fraction) and M[i, j].denominator == 1
            ):
                return False
    return abs(det(M)) == 1


def rref(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    nrows, ncols = M.shape
    A = np.empty_like(M)
    for i in range(nrows):
        for j in range(ncols):
            A[i, j] = Fraction(M[i, j])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * (1 / A[r, c])
        for i in range(nrows):
            if i != r and A[i, c] != 0:
                A[i] = A[i] - A[i, c] * A[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank(M: np.ndarray) -> int:
    if 0 in M.shape:
        return 0
    return len(rref(M)[1])


def hermite_normal_form(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-style Hermite normal form with transformation matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U @ M``, where H is
    upper echelon with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows are collected at the bottom.
    """
    nrows, ncols = M.shape
    H = np.empty((nrows, ncols), dtype=object)
    for i in range(nrows):
        for j in range(ncols):
            H[i, j] = as_int(M[i, j])
    U = identity(nrows)
    r = 0
    for c in range(ncols):
        # Euclid on the column below the current row until one entry remains.
        while True:
            live = [i for i in range(r, nrows) if H[i, c] != 0]
            if not live:
                break
            if len(live) == 1:
                i = live[0]
                if i != r:
                    H[[r, i]] = H[[i, r]]
                    U[[r, i]] = U[[i, r]]
                break
            live.sort(key=lambda i: abs(H[i, c]))
            i, j = live[0], live[1]
            q = H[j, c] // H[i, c]
            H[j] = H[j] - q * H[i]
            U[j] = U[j] - q * U[i]
        if r < nrows and H[r, c] != 0:
            if H[r, c] < 0:
                H[r] = -H[r]
                U[r] = -U[r]
            for i in range(r):
                q = H[i, c] // H[r, c]
                if q != 0:
                    H[i] = H[i] - q * H[r]
                    U[i] = U[i] - q * U[r]
            r += 1
            if r == nrows:
                break
    return H, U


def kernel_basis(M, ring: str = RING_RATIONALS) -> list[tuple]:
    """Basis of the null space of M over the given ring.

    Over the rationals the basis comes from the reduced row echelon form.
    Over the integers it comes from the Hermite normal form of the
    transpose: the rows of the transformation matrix paired with zero rows
    of H form a basis of the kernel lattice, and since the transformation
    is unimodular that lattice is automatically saturated (every integer
    vector of the rational kernel is an integer combination of the basis).
    """
    if not isinstance(M, np.ndarray):
        M = matrix(M)
    nrows, ncols = M.shape
    if ncols == 0:
        return []
    if ring == RING_RATIONALS:
        if nrows == 0:
            return [vector(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
        R, pivots = rref(M)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -R[r, f]
            basis.append(vector(v))
        return basis
    if ring == RING_INTEGERS:
        # Clear denominators row by row; this does not change the kernel.
        Mi = np.empty((nrows, ncols), dtype=object)
        for i in range(nrows):
            denoms = [as_fraction(M[i, j]).denominator for j in range(ncols)]
            scale = 1
            for d in denoms:
                scale = scale * d // gcd(scale, d)
            for j in range(ncols):
                Mi[i, j] = int(as_fraction(M[i, j]) * scale)
        if nrows == 0:
            return [vector(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
        H, U = hermite_normal_form(Mi.T.copy())
        basis = []
        for i in range(ncols):
            if all(H[i, j] == 0 for j in range(H.shape[1])):
                basis.append(vector(int(U[i, j]) for j in range(ncols)))
        return basis
    raise ValueError(f"unknown ring {ring!r}")


def content(v: Sequence[int]) -> int:
    """Nonnegative gcd of the entries."""
    g = 0
    for e in v:
        g = gcd(g, abs(as_int(e)))
    return g


def primitive_part(v: Sequence[int]) -> tuple[tuple, int]:
    """Factor a nonzero integer vector as m * u with u primitive, m > 0."""
    ints = [as_int(e) for e in v]
    m = content(ints)
    if m == 0:
        raise ZeroVector("primitive_part of the zero vector")
    return tuple(e // m for e in ints), m


def annihilator_basis(v: Sequence[int]) -> list[tuple]:
    """Saturated integer basis of the covectors vanishing on v."""
    return kernel_basis(matrix([list(v)]), RING_INTEGERS)


def solve_rational(A: np.ndarray, b: Sequence) -> tuple | None:
    """One exact solution of A x = b, or None if inconsistent."""
    nrows, ncols = A.shape
    aug = np.empty((nrows, ncols + 1), dtype=object)
    aug[:, :ncols] = A
    for i in range(nrows):
        aug[i, ncols] = as_fraction(b[i])
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = R[r, ncols]
    return vector(x)


def in_integer_span(basis: Sequence[Sequence[int]], w: Sequence[int]) -> bool:
    """True iff w is an integer combination of the basis vectors."""
    if not basis:
        return all(as_int(e) == 0 for e in w)
    A = matrix([[row[j] for row in basis] for j in range(len(basis[0]))])
    x = solve_rational(A, list(w))
    if x is None:
        return False
    return all(as_fraction(c).denominator == 1 for c in x)

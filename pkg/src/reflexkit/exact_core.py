"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and :class:`fractions.Fraction`
values. Matrices are lists of rows. No floating point is used anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import PreconditionError

__all__ = [
    "LatticePoint",
    "RationalPoint",
    "pairing",
    "primitive",
    "determinant",
    "rank",
    "solve",
    "inverse",
    "transpose",
    "matmul",
    "identity",
    "smith_normal_form",
    "hermite_normal_form",
    "dual_basis",
    "cone_multiplicity",
    "saturation_basis",
    "lattice_coordinates",
    "hyperplane_normal",
    "random_unimodular",
    "apply",
]

N = "N"
M = "M"


@dataclass(frozen=True)
class LatticePoint:
    """An integer vector in the lattice ``N`` or its dual ``M``."""

    coords: tuple[int, ...]
    ambient: str = N

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise ValueError("a lattice point needs at least one coordinate")
        for c in coords:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"lattice coordinates must be int, got {c!r}")
        if self.ambient not in (N, M):
            raise ValueError(f"ambient must be 'N' or 'M', got {self.ambient!r}")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


@dataclass(frozen=True)
class RationalPoint:
    """A rational vector in ``N_Q`` or ``M_Q``; coordinates kept in lowest terms."""

    coords: tuple[Fraction, ...]
    ambient: str = N

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise ValueError("a rational point needs at least one coordinate")
        if self.ambient not in (N, M):
            raise ValueError(f"ambient must be 'N' or 'M', got {self.ambient!r}")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


def _coords(x):
    if isinstance(x, (LatticePoint, RationalPoint)):
        return x.coords
    return tuple(x)


def pairing(x, y):
    """Standard pairing ``<x, y>`` of a point of ``N_Q`` with one of ``M_Q``.

    Plain sequences are accepted and paired without an ambient check. When
    both arguments carry an ambient tag they must be opposite.
    """
    ax = getattr(x, "ambient", None)
    ay = getattr(y, "ambient", None)
    if ax is not None and ay is not None and ax == ay:
        raise ValueError(f"cannot pair two points of the same lattice {ax}")
    xs, ys = _coords(x), _coords(y)
    if len(xs) != len(ys):
        raise ValueError(f"dimension mismatch: {len(xs)} vs {len(ys)}")
    return sum(a * b for a, b in zip(xs, ys))


def primitive(v):
    """Divide a nonzero integer vector by the gcd of its entries."""
    coords = _coords(v)
    g = 0
    for c in coords:
        g = gcd(g, c)
    if g == 0:
        raise ValueError("the zero vector has no primitive multiple")
    out = tuple(c // g for c in coords)
    if isinstance(v, LatticePoint):
        return LatticePoint(out, v.ambient)
    return out


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def apply(T, v) -> tuple:
    """Matrix-vector product ``T v`` as a tuple."""
    return tuple(sum(t * x for t, x in zip(row, v)) for row in T)


def _check_square(A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    return n


def determinant(A):
    """Exact determinant.

    Integer matrices go through Bareiss fraction-free elimination; anything
    else is eliminated over the rationals.
    """
    n = _check_square(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in A for x in row):
        return _bareiss(A, n)
    M_ = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M_[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M_[c], M_[p] = M_[p], M_[c]
            det = -det
        det *= M_[c][c]
        for r in range(c + 1, n):
            f = M_[r][c] / M_[c][c]
            if f:
                M_[r] = [a - f * b for a, b in zip(M_[r], M_[c])]
    return det


def _bareiss(A, n):
    M_ = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M_[k][k] == 0:
            p = next((r for r in range(k + 1, n) if M_[r][k] != 0), None)
            if p is None:
                return 0
            M_[k], M_[p] = M_[p], M_[k]
            sign = -sign
        pivot = M_[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M_[i][j] = (M_[i][j] * pivot - M_[i][k] * M_[k][j]) // prev
        prev = pivot
    return sign * M_[n - 1][n - 1]


def _row_reduce(A):
    """Reduced row echelon form over Q. Returns (rref, pivot columns)."""
    R = [[Fraction(x) for x in row] for row in A]
    pivots = []
    rows = len(R)
    cols = len(R[0]) if R else 0
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A) -> int:
    if not A:
        return 0
    return len(_row_reduce(A)[1])


def solve(A, b):
    """Solve ``A x = b`` exactly for square nonsingular ``A``."""
    n = _check_square(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = _row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(R[i][n] for i in range(n))


def inverse(A):
    n = _check_square(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = _row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def hyperplane_normal(vectors):
    """Integer vector orthogonal to ``n - 1`` vectors in ``Z^n``.

    Computed by cofactor expansion (generalized cross product), so the
    result is integral; it is zero exactly when the vectors are dependent.
    """
    vectors = [list(v) for v in vectors]
    n = len(vectors) + 1
    if any(len(v) != n for v in vectors):
        raise ValueError("need n-1 vectors of length n")
    out = []
    for i in range(n):
        minor = [v[:i] + v[i + 1:] for v in vectors]
        out.append((-1) ** i * determinant(minor))
    return tuple(out)


# --------------------------------------------------------------------------
# Normal forms


def _elim(a, b):
    """Coefficients (s, t, p, q) of a unimodular 2x2 step sending (a, b) to (g, 0).

    Plain subtraction is used when ``a`` divides ``b`` so reduction loops
    always make progress.
    """
    if a and b % a == 0:
        return 1, 0, -(b // a), 1
    g, s, t = _xgcd(a, b)
    return s, t, -b // g, a // g


def _xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U A V = D``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries, each dividing the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def row_comb(X, i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        ri, rj = X[i], X[j]
        X[i] = [a * x + b * y for x, y in zip(ri, rj)]
        X[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_comb(X, i, j, a, b, c, d):
        for row in X:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            col_comb(D, t, j, 0, 1, 1, 0)
            col_comb(V, t, j, 0, 1, 1, 0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    c = _elim(D[t][t], D[i][t])
                    row_comb(D, t, i, *c)
                    row_comb(U, t, i, *c)
            for j in range(t + 1, n):
                if D[t][j]:
                    c = _elim(D[t][t], D[t][j])
                    col_comb(D, t, j, *c)
                    col_comb(V, t, j, *c)
                    done = False
            if any(D[i][t] for i in range(t + 1, m)):
                done = False
                continue
            # divisibility: pivot must divide the rest of the block
            piv = D[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is not None:
                i, _ = bad
                row_comb(D, t, i, 1, 1, 0, 1)
                row_comb(U, t, i, 1, 1, 0, 1)
                done = False
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def hermite_normal_form(A):
    """Row-style Hermite normal form with transform.

    Returns ``(H, U)`` with ``U A = H``, ``U`` unimodular, ``H`` in row echelon
    form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows at the bottom.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c]:
                s, t, p, q = _elim(H[r][c], H[i][c])
                hr, hi = H[r], H[i]
                H[r] = [s * x + t * y for x, y in zip(hr, hi)]
                H[i] = [p * x + q * y for x, y in zip(hr, hi)]
                ur, ui = U[r], U[i]
                U[r] = [s * x + t * y for x, y in zip(ur, ui)]
                U[i] = [p * x + q * y for x, y in zip(ur, ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


# --------------------------------------------------------------------------
# Lattice helpers


def dual_basis(basis):
    """Dual basis of ``M_Q`` for a basis ``e_1..e_n`` of ``N_Q``.

    The result satisfies ``<e_i, e_j*> = [i == j]``. Entries are Fractions.
    """
    E = [list(_coords(e)) for e in basis]
    _check_square(E)
    if determinant(E) == 0:
        raise ValueError("input vectors are linearly dependent")
    return [tuple(col) for col in zip(*inverse(E))]


def cone_multiplicity(generators) -> int:
    """Index of the lattice spanned by ``generators`` in its saturation."""
    A = [list(_coords(g)) for g in generators]
    if not A:
        return 1
    D, _, _ = smith_normal_form(A)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    if sum(1 for d in diag if d) < len(A):
        raise ValueError("cone generators are linearly dependent")
    out = 1
    for d in diag:
        if d:
            out *= d
    return out


def saturation_basis(vectors):
    """A basis of ``Z^n`` intersected with the rational span of ``vectors``.

    Returns ``(basis, V)`` where ``basis`` is a list of ``r = rank`` integer
    row vectors and ``V`` is the right Smith transform; coordinates of a
    point in the span are the first ``r`` entries of ``x V``.
    """
    A = [list(_coords(v)) for v in vectors]
    D, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    Vinv = inverse(V)
    basis = [tuple(int(x) for x in Vinv[i]) for i in range(r)]
    return basis, V


def lattice_coordinates(point, V, r):
    """Coordinates of ``point`` with respect to a saturation basis."""
    x = _coords(point)
    cols = list(zip(*V))
    full = [sum(a * b for a, b in zip(x, col)) for col in cols]
    if any(full[r:]):
        raise ValueError("point does not lie in the span")
    return tuple(full[:r])


def random_unimodular(n: int, rng: random.Random, steps: int | None = None, bound: int = 2):
    """Random element of GL(n, Z) as a product of elementary operations.

    Row additions use multipliers in ``[-bound, bound]``; swaps and sign
    flips are mixed in so both determinant signs occur.
    """
    T = identity(n)
    if steps is None:
        steps = 3 * n
    for _ in range(steps):
        kind = rng.randrange(4) if n > 1 else 3
        if kind <= 1:
            i, j = rng.sample(range(n), 2)
            k = rng.randint(-bound, bound)
            T[i] = [a + k * b for a, b in zip(T[i], T[j])]
        elif kind == 2:
            i, j = rng.sample(range(n), 2)
            T[i], T[j] = T[j], T[i]
        else:
            i = rng.randrange(n)
            T[i] = [-a for a in T[i]]
    return T


def require(condition: bool, code: str, message: str):
    if not condition:
        raise PreconditionError(code, message)

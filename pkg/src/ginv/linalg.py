"""Exact matrix kernels: fraction-free rank, characteristic polynomials,
Pfaffians and polarization of homogeneous forms."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import List, Sequence, Tuple

from .poly import MultiPoly, to_fraction


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss fraction-free elimination.

    Rows are scaled to a common integer denominator first, so every pivot step
    divides exactly in the integers.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows must have equal length")
    a: List[List[int]] = []
    for r in rows:
        fr = [to_fraction(v) for v in r]
        den = 1
        for v in fr:
            den = den * v.denominator // _gcd(den, v.denominator)
        a.append([int(v * den) for v in fr])

    nrows = len(a)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            row_i = a[i]
            row_r = a[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by rational Gaussian elimination."""
    a = [[to_fraction(v) for v in row] for row in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f:
                for j in range(col, n):
                    a[i][j] -= f * a[col][j]
    return det


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]):
    """Product of two matrices whose entries support + and * (rationals or polynomials)."""
    n, k, m = len(a), len(b), len(b[0])
    if any(len(r) != k for r in a):
        raise ValueError("inner dimensions differ")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                prod = x * y
                acc = prod if acc is None else acc + prod
            row.append(acc if acc is not None else _zero_like(a[i][0]))
        out.append(row)
    return out


def _is_zero(x) -> bool:
    return not x


def _zero_like(x):
    if isinstance(x, MultiPoly):
        return MultiPoly.zero(x.num_vars)
    return Fraction(0)


def generic_matrix(mats: Sequence[Sequence[Sequence]]) -> List[List[MultiPoly]]:
    """The polynomial matrix sum_a x_a * mats[a] in len(mats) variables."""
    nv = len(mats)
    d = len(mats[0])
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(MultiPoly.linear(nv, {a: to_fraction(mats[a][i][j]) for a in range(nv) if mats[a][i][j]}))
        out.append(row)
    return out


def char_poly_coefficients(x: Sequence[Sequence[MultiPoly]]) -> List[MultiPoly]:
    """Coefficients c_0..c_d of det(t I - X) for a polynomial matrix X.

    Faddeev-LeVerrier: M_1 = I, c_{d-k} = -tr(X M_k)/k, M_{k+1} = X M_k + c_{d-k} I.
    Division is by the integer k only, so the recursion stays exact over Q[x].
    """
    d = len(x)
    nv = x[0][0].num_vars
    zero = MultiPoly.zero(nv)
    one = MultiPoly.constant(nv, 1)
    coeffs = [zero] * (d + 1)
    coeffs[d] = one
    m = [[one if i == j else zero for j in range(d)] for i in range(d)]
    for k in range(1, d + 1):
        am = matmul(x, m)
        trace = zero
        for i in range(d):
            trace = trace + am[i][i]
        c = trace.scale(Fraction(-1, k))
        coeffs[d - k] = c
        if k < d:
            m = [[am[i][j] + c if i == j else am[i][j] for j in range(d)] for i in range(d)]
    return coeffs


def poly_determinant(x: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a polynomial matrix via its characteristic polynomial."""
    c0 = char_poly_coefficients(x)[0]
    return c0 if len(x) % 2 == 0 else -c0


def _perfect_matchings(items: Tuple[int, ...]):
    """Yield (matching, sign) pairs; sign is the parity of the matching permutation."""
    if not items:
        yield [], 1
        return
    first = items[0]
    for k in range(1, len(items)):
        partner = items[k]
        rest = items[1:k] + items[k + 1:]
        # moving `partner` next to `first` costs k-1 transpositions
        sign = -1 if (k - 1) % 2 else 1
        for sub, s in _perfect_matchings(rest):
            yield [(first, partner)] + sub, sign * s


def pfaffian_matrix(x: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Pfaffian of an antisymmetric polynomial matrix by the signed matching sum."""
    d = len(x)
    if d % 2:
        raise ValueError(f"Pfaffian needs even size, got {d}")
    for i in range(d):
        for j in range(d):
            if x[i][j] != -x[j][i]:
                raise ValueError("Pfaffian needs an antisymmetric matrix")
    nv = x[0][0].num_vars
    total = MultiPoly.zero(nv)
    for matching, sign in _perfect_matchings(tuple(range(d))):
        term = MultiPoly.constant(nv, sign)
        for i, j in matching:
            term = term * x[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def polarize(p: MultiPoly, slots: int) -> MultiPoly:
    """Full polarization of a homogeneous form of degree ``slots``.

    Returns the symmetric multilinear form in ``slots * p.num_vars`` variables
    (slot s occupies variables s*nv .. s*nv+nv-1) whose diagonal is p:

        s_p(X_1..X_d) = 1/d! * sum over nonempty S of (-1)^(d-|S|) p(sum_{i in S} X_i)
    """
    if p.is_zero():
        return MultiPoly.zero(slots * p.num_vars)
    d = p.degree()
    if not p.is_homogeneous():
        raise ValueError("polarization needs a homogeneous polynomial")
    if slots != d:
        raise ValueError(f"degree {d} form needs {d} slots, got {slots}")
    if d < 1:
        raise ValueError("cannot polarize a constant")
    nv = p.num_vars
    total_vars = d * nv
    result = MultiPoly.zero(total_vars)
    for size in range(1, d + 1):
        sign = -1 if (d - size) % 2 else 1
        for subset in combinations(range(d), size):
            subs = [
                MultiPoly.linear(total_vars, {s * nv + a: 1 for s in subset})
                for a in range(nv)
            ]
            result = result + p.compose(subs).scale(sign)
    return result.scale(Fraction(1, factorial(d)))

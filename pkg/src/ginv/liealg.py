"""Finite-dimensional Lie algebras given by rational structure constants.

Indices are 1-based in the public surface (matching the usual B_1..B_m
notation) and the bracket convention is [B_beta, B_gamma] = c^alpha_{beta gamma} B_alpha.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import determinant, exact_rank, matmul
from .poly import format_rational, to_fraction

Matrix = List[List[Fraction]]

DEFAULT_TRIALS = 8
DEFAULT_BOUND = 20


class AlgebraError(ValueError):
    """Bad algebra name, malformed structure constants or unreadable algebra file."""


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Structure constants stored sparsely as {(alpha, beta, gamma): c} with beta < gamma."""

    name: str
    m: int
    brackets: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)
    matrix_rep: Optional[Tuple[Tuple[Tuple[Fraction, ...], ...], ...]] = None

    def __post_init__(self):
        if self.m < 1:
            raise AlgebraError(f"dimension must be positive, got {self.m}")
        clean = {}
        for (a, b, g), v in self.brackets.items():
            if not (1 <= a <= self.m and 1 <= b <= self.m and 1 <= g <= self.m):
                raise AlgebraError(f"index ({a},{b},{g}) outside 1..{self.m}")
            if b >= g:
                raise AlgebraError(f"bracket entries need beta < gamma, got beta={b}, gamma={g}")
            v = to_fraction(v)
            if v:
                clean[(a, b, g)] = v
        object.__setattr__(self, "brackets", clean)
        if self.matrix_rep is not None:
            rep = tuple(tuple(tuple(to_fraction(x) for x in row) for row in mat) for mat in self.matrix_rep)
            if len(rep) != self.m:
                raise AlgebraError(f"matrix_rep has {len(rep)} matrices, expected {self.m}")
            d = len(rep[0])
            if any(len(mat) != d or any(len(row) != d for row in mat) for mat in rep):
                raise AlgebraError("matrix_rep matrices must be square of a common size")
            object.__setattr__(self, "matrix_rep", rep)
        # dense cache, 0-based [alpha][beta][gamma]
        dense = [[[Fraction(0)] * self.m for _ in range(self.m)] for _ in range(self.m)]
        for (a, b, g), v in clean.items():
            dense[a - 1][b - 1][g - 1] = v
            dense[a - 1][g - 1][b - 1] = -v
        object.__setattr__(self, "_dense", dense)

    def c(self, alpha: int, beta: int, gamma: int) -> Fraction:
        """c^alpha_{beta gamma} with 1-based indices and implicit antisymmetry."""
        return self._dense[alpha - 1][beta - 1][gamma - 1]

    @property
    def dense(self) -> List[List[List[Fraction]]]:
        """0-based array ``dense[alpha][beta][gamma]``; do not mutate."""
        return self._dense

    def bracket(self, u: Sequence, v: Sequence) -> List[Fraction]:
        """Coordinates of [u, v] for coordinate vectors u, v."""
        u = [to_fraction(x) for x in u]
        v = [to_fraction(x) for x in v]
        out = [Fraction(0)] * self.m
        for (a, b, g), c in self.brackets.items():
            w = u[b - 1] * v[g - 1] - u[g - 1] * v[b - 1]
            if w:
                out[a - 1] += c * w
        return out

    def is_abelian(self) -> bool:
        return not self.brackets

    def with_constant(self, alpha: int, beta: int, gamma: int, value) -> "LieAlgebraSpec":
        """Copy with one structure constant overwritten (beta < gamma); drops matrix_rep."""
        new = dict(self.brackets)
        new[(alpha, beta, gamma)] = to_fraction(value)
        return LieAlgebraSpec(self.name + "*", self.m, new, None)


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi" | "representation"
    indices: Tuple[int, ...]
    residual: Tuple[Fraction, ...]

    def describe(self) -> str:
        res = ", ".join(format_rational(r) for r in self.residual)
        return f"{self.kind} at {self.indices}: residual ({res})"


@dataclass(frozen=True)
class AlgebraProfile:
    m: int
    l: int
    semisimple: bool
    abelian: bool

    def __post_init__(self):
        if not 0 <= self.l <= self.m:
            raise ValueError("rank must lie in 0..m")
        if self.abelian and self.l != self.m:
            raise ValueError("an abelian algebra has rank equal to its dimension")


@dataclass(frozen=True)
class RankResult:
    rank: int
    samples: int
    witness: Tuple[int, ...]


# -- construction -------------------------------------------------------------


def unit(d: int, i: int, j: int) -> Matrix:
    """Elementary matrix e_ij (1-based) of size d."""
    mat = [[Fraction(0)] * d for _ in range(d)]
    mat[i - 1][j - 1] = Fraction(1)
    return mat


def _lin(terms: Sequence[Tuple[int, Matrix]]) -> Matrix:
    d = len(terms[0][1])
    out = [[Fraction(0)] * d for _ in range(d)]
    for c, mat in terms:
        for i in range(d):
            for j in range(d):
                out[i][j] += c * mat[i][j]
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    ab = matmul(a, b)
    ba = matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def solve_coordinates(basis: Sequence[Matrix], target: Matrix) -> List[Fraction]:
    """Coordinates of ``target`` in the span of ``basis`` (exact; raises if outside)."""
    flat = [[mat[i][j] for mat in basis] for i in range(len(target)) for j in range(len(target))]
    rhs = [target[i][j] for i in range(len(target)) for j in range(len(target))]
    m = len(basis)
    rows = [row + [r] for row, r in zip(flat, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if len(pivots) != m:
        raise AlgebraError("matrix representation is not linearly independent")
    if any(rows[i][m] for i in range(r, len(rows))):
        raise AlgebraError("commutator leaves the span of the representation")
    sol = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        sol[col] = rows[i][m]
    return sol


def from_matrices(name: str, basis: Sequence[Matrix]) -> LieAlgebraSpec:
    """Structure constants of the matrix Lie algebra spanned by ``basis`` under the commutator."""
    m = len(basis)
    brackets = {}
    for b, g in combinations(range(m), 2):
        coords = solve_coordinates(basis, commutator(basis[b], basis[g]))
        for a, v in enumerate(coords):
            if v:
                brackets[(a + 1, b + 1, g + 1)] = v
    return LieAlgebraSpec(name, m, brackets, tuple(tuple(tuple(r) for r in mat) for mat in basis))


def sl_basis(k: int) -> List[Matrix]:
    """Basis of sl(k): e_ij with i > j, then e_ii - e_(i+1)(i+1), then e_ij with i < j.

    For k = 2 this is (e21, e11 - e22, e12).
    """
    lower = [unit(k, i, j) for i in range(1, k + 1) for j in range(1, i)]
    cartan = [_lin([(1, unit(k, i, i)), (-1, unit(k, i + 1, i + 1))]) for i in range(1, k)]
    upper = [unit(k, i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return lower + cartan + upper


def so_basis(k: int) -> List[Matrix]:
    """Basis e_ij - e_ji of so(k), pairs i < j in lexicographic order."""
    return [_lin([(1, unit(k, i, j)), (-1, unit(k, j, i))]) for i, j in combinations(range(1, k + 1), 2)]


def heisenberg_basis() -> List[Matrix]:
    # negated e12, e13, e23: with the plain commutator e12, e23 give [B1,B3] = +B2,
    # while the pinned constants have [B1,B3] = -B2
    return [_lin([(-1, unit(3, i, j))]) for i, j in ((1, 2), (1, 3), (2, 3))]


def abelian(m: int) -> LieAlgebraSpec:
    return LieAlgebraSpec(f"abelian:{m}", m, {})


_NAME = re.compile(r"^(sl|so|abelian)(?:[:(]?(\d+)\)?)$")


def build_standard(name: str) -> LieAlgebraSpec:
    """Built-in algebras: sl2, slK / sl:K / sl(K), so3, so4, soK, heisenberg3, abelian:M."""
    key = name.strip().lower().replace(" ", "")
    if key in ("heisenberg3", "heisenberg", "h3"):
        return from_matrices("heisenberg3", heisenberg_basis())
    m = _NAME.match(key)
    if not m:
        raise AlgebraError(f"unknown algebra {name!r}")
    family, size = m.group(1), int(m.group(2))
    if family == "sl":
        if size < 2:
            raise AlgebraError(f"sl(k) needs k >= 2, got {size}")
        return from_matrices(f"sl{size}", sl_basis(size))
    if family == "so":
        if size < 3:
            raise AlgebraError(f"so(k) needs k >= 3, got {size}")
        return from_matrices(f"so{size}", so_basis(size))
    if size < 1:
        raise AlgebraError(f"abelian(m) needs m >= 1, got {size}")
    return abelian(size)


BUILTINS = ("sl2", "sl3", "so3", "so4", "so5", "heisenberg3")


def change_basis(spec: LieAlgebraSpec, p: Sequence[Sequence], name: Optional[str] = None) -> LieAlgebraSpec:
    """Same algebra in the basis B'_j = sum_i p[i][j] B_i (p invertible)."""
    m = spec.m
    pm = [[to_fraction(x) for x in row] for row in p]
    if determinant(pm) == 0:
        raise AlgebraError("basis change matrix is singular")
    inv = _inverse(pm)
    brackets = {}
    for b, g in combinations(range(m), 2):
        col_b = [pm[i][b] for i in range(m)]
        col_g = [pm[i][g] for i in range(m)]
        old = spec.bracket(col_b, col_g)
        new = [sum(inv[a][i] * old[i] for i in range(m)) for a in range(m)]
        for a, v in enumerate(new):
            if v:
                brackets[(a + 1, b + 1, g + 1)] = v
    rep = None
    if spec.matrix_rep is not None:
        d = len(spec.matrix_rep[0])
        rep = tuple(
            tuple(
                tuple(sum(pm[i][j] * spec.matrix_rep[i][r][s] for i in range(m)) for s in range(d))
                for r in range(d)
            )
            for j in range(m)
        )
    return LieAlgebraSpec(name or f"{spec.name}'", m, brackets, rep)


def _inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next(i for i in range(col, n) if rows[i][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return [r[n:] for r in rows]


def permute_basis(spec: LieAlgebraSpec, order: Sequence[int]) -> LieAlgebraSpec:
    """Reorder the basis: new B_j is old B_{order[j]} (1-based)."""
    m = spec.m
    p = [[Fraction(int(order[j] == i + 1)) for j in range(m)] for i in range(m)]
    return change_basis(spec, p, name=f"{spec.name}-perm")


# -- validation and analysis ------------------------------------------------------


def validate(spec: LieAlgebraSpec, raw: Optional[Dict[Tuple[int, int, int], Fraction]] = None) -> List[Violation]:
    """Every violated bracket axiom; an empty list means the table defines a Lie algebra.

    ``raw`` optionally supplies a full (alpha, beta, gamma) table, unconstrained in
    beta/gamma order, whose antisymmetry is checked as well.
    """
    out: List[Violation] = []
    m = spec.m
    if raw is not None:
        for b in range(1, m + 1):
            for g in range(b, m + 1):
                res = tuple(
                    to_fraction(raw.get((a, b, g), 0)) + to_fraction(raw.get((a, g, b), 0))
                    for a in range(1, m + 1)
                )
                if any(res):
                    out.append(Violation("antisymmetry", (b, g), res))
    c = spec.dense
    for b, g, d in combinations(range(m), 3):
        res = []
        for a in range(m):
            s = Fraction(0)
            for mu in range(m):
                s += c[mu][b][g] * c[a][mu][d] + c[mu][g][d] * c[a][mu][b] + c[mu][d][b] * c[a][mu][g]
            res.append(s)
        if any(res):
            out.append(Violation("jacobi", (b + 1, g + 1, d + 1), tuple(res)))
    if spec.matrix_rep is not None:
        rep = [[list(r) for r in mat] for mat in spec.matrix_rep]
        d = len(rep[0])
        for b, g in combinations(range(m), 2):
            lhs = commutator(rep[b], rep[g])
            for r in range(d):
                for s in range(d):
                    rhs = sum(c[a][b][g] * rep[a][r][s] for a in range(m))
                    if lhs[r][s] != rhs:
                        out.append(Violation("representation", (b + 1, g + 1, r + 1, s + 1), (lhs[r][s] - rhs,)))
    return out


def adjoint_matrix(spec: LieAlgebraSpec, coeffs: Sequence) -> Matrix:
    """Matrix of ad_B in the basis; column gamma holds the coordinates of [B, B_gamma]."""
    if len(coeffs) != spec.m:
        raise AlgebraError(f"expected {spec.m} coefficients, got {len(coeffs)}")
    b = [to_fraction(x) for x in coeffs]
    m = spec.m
    c = spec.dense
    return [[sum(c[a][mu][g] * b[mu] for mu in range(m) if b[mu]) for g in range(m)] for a in range(m)]


def killing_form(spec: LieAlgebraSpec) -> Matrix:
    """K_{beta gamma} = sum_{mu, nu} c^mu_{beta nu} c^nu_{gamma mu}."""
    m = spec.m
    c = spec.dense
    return [
        [sum(c[mu][b][nu] * c[nu][g][mu] for mu in range(m) for nu in range(m)) for g in range(m)]
        for b in range(m)
    ]


def is_semisimple(spec: LieAlgebraSpec) -> bool:
    # Cartan's criterion
    return determinant(killing_form(spec)) != 0


def algebra_rank(spec: LieAlgebraSpec, trials: int = DEFAULT_TRIALS, seed: int = 42,
                 bound: int = DEFAULT_BOUND) -> RankResult:
    """m minus the largest rank of ad_B over random integer points B."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    best, witness = -1, ()
    for _ in range(trials):
        b = [rng.randint(-bound, bound) for _ in range(spec.m)]
        r = exact_rank(adjoint_matrix(spec, b))
        if r > best:
            best, witness = r, tuple(b)
    return RankResult(spec.m - best, trials, witness)


def profile(spec: LieAlgebraSpec, trials: int = DEFAULT_TRIALS, seed: int = 42) -> AlgebraProfile:
    return AlgebraProfile(
        m=spec.m,
        l=algebra_rank(spec, trials, seed).rank,
        semisimple=is_semisimple(spec),
        abelian=spec.is_abelian(),
    )


# -- JSON ------------------------------------------------------------------------


def load_algebra(path) -> LieAlgebraSpec:
    """Read the algebra JSON format; errors carry the offending line number."""
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return algebra_from_dict(data, text=text, source=str(path))


def _line_of_entry(text: Optional[str], index: int) -> int:
    if text is None:
        return 0
    pos = -1
    for _ in range(index + 1):
        pos = text.find('"beta"', pos + 1)
        if pos < 0:
            return 0
    return text.count("\n", 0, pos) + 1


def algebra_from_dict(data, text: Optional[str] = None, source: str = "<algebra>") -> LieAlgebraSpec:
    def fail(msg, entry: Optional[int] = None):
        line = _line_of_entry(text, entry) if entry is not None else 0
        where = f"{source}:{line}" if line else source
        raise AlgebraError(f"{where}: {msg}")

    if not isinstance(data, dict):
        fail("top level must be an object")
    for key in ("name", "dim", "brackets"):
        if key not in data:
            fail(f"missing field {key!r}")
    m = data["dim"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        fail("'dim' must be a positive integer")
    if not isinstance(data["brackets"], list):
        fail("'brackets' must be a list")
    brackets = {}
    for i, entry in enumerate(data["brackets"]):
        if not isinstance(entry, dict) or not {"beta", "gamma", "coeffs"} <= set(entry):
            fail(f"bracket {i} needs beta, gamma and coeffs", i)
        b, g = entry["beta"], entry["gamma"]
        if not all(isinstance(x, int) and 1 <= x <= m for x in (b, g)):
            fail(f"bracket {i}: beta/gamma must be integers in 1..{m}", i)
        if b >= g:
            fail(f"bracket {i}: beta < gamma required, got beta={b}, gamma={g}", i)
        if not isinstance(entry["coeffs"], dict):
            fail(f"bracket {i}: coeffs must be an object", i)
        for a_key, val in entry["coeffs"].items():
            try:
                a = int(a_key)
            except ValueError:
                fail(f"bracket {i}: alpha {a_key!r} is not an integer", i)
            if not 1 <= a <= m:
                fail(f"bracket {i}: alpha {a} outside 1..{m}", i)
            try:
                v = to_fraction(val) if not isinstance(val, float) else None
            except (ValueError, ZeroDivisionError, TypeError):
                v = None
            if v is None:
                fail(f"bracket {i}: coefficient {val!r} is not an exact rational", i)
            if (a, b, g) in brackets:
                fail(f"bracket {i}: duplicate entry for ({a},{b},{g})", i)
            brackets[(a, b, g)] = v
    return LieAlgebraSpec(str(data["name"]), m, brackets)


def algebra_to_dict(spec: LieAlgebraSpec) -> dict:
    grouped: Dict[Tuple[int, int], Dict[str, str]] = {}
    for (a, b, g), v in sorted(spec.brackets.items(), key=lambda t: (t[0][1], t[0][2], t[0][0])):
        grouped.setdefault((b, g), {})[str(a)] = format_rational(v)
    return {
        "name": spec.name,
        "dim": spec.m,
        "brackets": [{"beta": b, "gamma": g, "coeffs": co} for (b, g), co in grouped.items()],
    }

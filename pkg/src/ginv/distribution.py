"""The vector fields chi_alpha of infinitesimal adjoint invariance on curvature
coordinates R^alpha_ij, their brackets, and the generic rank of their span."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .liealg import (
    DEFAULT_BOUND,
    DEFAULT_TRIALS,
    AlgebraProfile,
    LieAlgebraSpec,
    profile as algebra_profile,
)
from .linalg import exact_rank
from .poly import MultiPoly, to_fraction

MAX_VARIABLES = 4096
MAX_BASE_DIM = 6


@dataclass(frozen=True)
class CurvatureFrame:
    """Coordinates R^alpha_ij (1 <= i < j <= n); flat index = pair_rank(i, j) * m + alpha - 1."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"base dimension n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ValueError("fibre dimension m must be >= 1")

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(combinations(range(1, self.n + 1), 2))

    @property
    def N(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def num_vars(self) -> int:
        return self.m * self.N

    def pair_rank(self, i: int, j: int) -> int:
        if not 1 <= i < j <= self.n:
            raise ValueError(f"invalid pair ({i},{j}) for n={self.n}")
        # pairs before row i, then offset within row i
        return (i - 1) * self.n - (i - 1) * i // 2 + (j - i - 1)

    def index(self, alpha: int, i: int, j: int) -> int:
        if not 1 <= alpha <= self.m:
            raise ValueError(f"alpha {alpha} outside 1..{self.m}")
        return self.pair_rank(i, j) * self.m + alpha - 1

    def label(self, index: int) -> Tuple[int, int, int]:
        """(alpha, i, j) for a flat index."""
        rank, a = divmod(index, self.m)
        i, j = self.pairs[rank]
        return a + 1, i, j

    def name(self, index: int) -> str:
        a, i, j = self.label(index)
        return f"R^{a}_{i}{j}"

    def names(self) -> List[str]:
        return [self.name(k) for k in range(self.num_vars)]

    def var(self, alpha: int, i: int, j: int) -> MultiPoly:
        return MultiPoly.variable(self.num_vars, self.index(alpha, i, j))


class PolyVectorField:
    """sum_k coeffs[k] d/dx_k with polynomial coefficients; zero coefficients omitted."""

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Optional[Dict[int, MultiPoly]] = None):
        self.num_vars = num_vars
        clean = {}
        for k, p in (coeffs or {}).items():
            if not 0 <= k < num_vars:
                raise IndexError(f"coordinate {k} out of range")
            if p.num_vars != num_vars:
                raise ValueError("coefficient variable count must match the field")
            if not p.is_zero():
                clean[k] = p
        self.coeffs = clean

    def coefficient(self, k: int) -> MultiPoly:
        return self.coeffs.get(k, MultiPoly.zero(self.num_vars))

    def apply(self, p: MultiPoly) -> MultiPoly:
        """The derivation X(p) = sum_k X^k dp/dx_k."""
        if p.num_vars != self.num_vars:
            raise ValueError(f"polynomial has {p.num_vars} variables, field has {self.num_vars}")
        used = set(p.variables_used())
        acc = {}
        for k, c in self.coeffs.items():
            if k not in used:
                continue
            d = p.diff(k)
            for e1, c1 in c.terms.items():
                for e2, c2 in d.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.num_vars, {e: v for e, v in acc.items() if v})

    def bracket(self, other: "PolyVectorField") -> "PolyVectorField":
        """[X, Y]^k = X(Y^k) - Y(X^k)."""
        keys = set(self.coeffs) | set(other.coeffs)
        return PolyVectorField(
            self.num_vars,
            {k: self.apply(other.coefficient(k)) - other.apply(self.coefficient(k)) for k in keys},
        )

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        keys = set(self.coeffs) | set(other.coeffs)
        return PolyVectorField(self.num_vars, {k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyVectorField":
        if isinstance(c, MultiPoly):
            return PolyVectorField(self.num_vars, {k: p * c for k, p in self.coeffs.items()})
        c = to_fraction(c)
        return PolyVectorField(self.num_vars, {k: p.scale(c) for k, p in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def to_text(self, names) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"({self.coeffs[k].to_text(names)})*d/d{names(k)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyVectorField({self.num_vars}, {sorted(self.coeffs)})"


def chi_fields(spec: LieAlgebraSpec, n: int) -> List[PolyVectorField]:
    """chi_alpha = sum_{i<j} c^beta_{gamma alpha} R^gamma_ij d/dR^beta_ij, alpha = 1..m."""
    frame = CurvatureFrame(n, spec.m)
    m, nv = spec.m, frame.num_vars
    c = spec.dense
    fields = []
    for a in range(m):
        coeffs = {}
        for rank in range(frame.N):
            base = rank * m
            for b in range(m):
                lin = {base + g: c[b][g][a] for g in range(m) if c[b][g][a]}
                if lin:
                    coeffs[base + b] = MultiPoly.linear(nv, lin)
        fields.append(PolyVectorField(nv, coeffs))
    return fields


def lambda_at_point(spec: LieAlgebraSpec, n: int, point: Sequence) -> List[List[Fraction]]:
    """m x (m N) matrix; row alpha, column (beta, ij) holds c^beta_{gamma alpha} R^gamma_ij."""
    frame = CurvatureFrame(n, spec.m)
    if len(point) != frame.num_vars:
        raise ValueError(f"point has length {len(point)}, expected {frame.num_vars}")
    pt = [to_fraction(v) for v in point]
    m = spec.m
    c = spec.dense
    rows = []
    for a in range(m):
        row = []
        for rank in range(frame.N):
            r = pt[rank * m:(rank + 1) * m]
            for b in range(m):
                row.append(sum((c[b][g][a] * r[g] for g in range(m) if r[g]), Fraction(0)))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Prediction:
    rank: Optional[int]
    rule: str  # abelian-0 | n2-m-minus-l | semisimple-m | none


def rank_prediction(prof: AlgebraProfile, n: int) -> Prediction:
    if n < 2:
        raise ValueError("n must be >= 2")
    if prof.abelian:
        return Prediction(0, "abelian-0")
    if n == 2:
        return Prediction(prof.m - prof.l, "n2-m-minus-l")
    if prof.semisimple:
        return Prediction(prof.m, "semisimple-m")
    return Prediction(None, "none")


@dataclass
class RankReport:
    algebra: str
    n: int
    predicted: Optional[int]
    rule: str
    observed: int
    trials: int
    bound: int
    seed: int
    witness_point: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.predicted is None or self.observed == self.predicted

    def to_dict(self) -> dict:
        return asdict(self)


def _check_size(frame: CurvatureFrame):
    if frame.n > MAX_BASE_DIM:
        raise ValueError(f"n={frame.n} exceeds the supported maximum {MAX_BASE_DIM}")
    if frame.num_vars > MAX_VARIABLES:
        raise ValueError(f"{frame.num_vars} curvature coordinates exceed the cap of {MAX_VARIABLES}")


def sample_points(num_vars: int, trials: int, bound: int, seed: int) -> List[List[int]]:
    """Deterministic integer sample points in [-bound, bound]^num_vars."""
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) for _ in range(num_vars)] for _ in range(trials)]


def observed_rank(spec: LieAlgebraSpec, n: int, trials: int = DEFAULT_TRIALS,
                  bound: int = DEFAULT_BOUND, seed: int = 42) -> Tuple[int, List[int]]:
    """Max exact rank of Lambda over sampled points, with the first point attaining it."""
    if trials < 1 or bound < 1:
        raise ValueError("trials and bound must be >= 1")
    frame = CurvatureFrame(n, spec.m)
    _check_size(frame)
    best, witness = -1, []
    for pt in sample_points(frame.num_vars, trials, bound, seed):
        r = exact_rank(lambda_at_point(spec, n, pt))
        if r > best:
            best, witness = r, pt
    return best, witness


def generic_rank(spec: LieAlgebraSpec, n: int, trials: int = DEFAULT_TRIALS,
                 bound: int = DEFAULT_BOUND, seed: int = 42,
                 prof: Optional[AlgebraProfile] = None) -> RankReport:
    prof = prof or algebra_profile(spec, seed=seed)
    pred = rank_prediction(prof, n)
    observed, witness = observed_rank(spec, n, trials, bound, seed)
    return RankReport(spec.name, n, pred.rank, pred.rule, observed, trials, bound, seed, witness)


def certify(spec: LieAlgebraSpec, n: int, trials: int = DEFAULT_TRIALS,
            bound: int = DEFAULT_BOUND, seed: int = 42, rounds: int = 3) -> RankReport:
    """Repeat the sampling with derived seeds; on disagreement double the trials and retry."""
    report = generic_rank(spec, n, trials, bound, seed)
    best = report
    for k in range(1, rounds + 1):
        extra = generic_rank(spec, n, trials, bound, seed + 7919 * k)
        if extra.observed != best.observed:
            trials *= 2
            again = generic_rank(spec, n, trials, bound, seed + 104729 * k)
            extra = max((extra, again), key=lambda r: r.observed)
        if extra.observed > best.observed:
            best = extra
    best.trials = trials
    return best


@dataclass
class InvolutivityReport:
    algebra: str
    n: int
    pairs_checked: int
    counterexample: Optional[Tuple[int, int, str]] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def involutivity_check(spec: LieAlgebraSpec, n: int) -> InvolutivityReport:
    """Check [chi_rho, chi_sigma] = sum_gamma c^gamma_{rho sigma} chi_gamma for all rho < sigma."""
    frame = CurvatureFrame(n, spec.m)
    chis = chi_fields(spec, n)
    checked = 0
    for r, s in combinations(range(spec.m), 2):
        lhs = chis[r].bracket(chis[s])
        rhs = PolyVectorField(frame.num_vars)
        for g in range(spec.m):
            c = spec.dense[g][r][s]
            if c:
                rhs = rhs + chis[g].scale(c)
        checked += 1
        diff = lhs - rhs
        if not diff.is_zero():
            return InvolutivityReport(spec.name, n, checked, (r + 1, s + 1, diff.to_text(frame.name)))
    return InvolutivityReport(spec.name, n, checked)

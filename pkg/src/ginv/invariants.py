"""Adjoint-invariant polynomials: characteristic-polynomial generators,
polarized slot invariants on N copies of the algebra, and their images on
curvature coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from .distribution import CurvatureFrame, PolyVectorField, chi_fields, sample_points, rank_prediction
from .liealg import DEFAULT_BOUND, DEFAULT_TRIALS, AlgebraError, AlgebraProfile, LieAlgebraSpec
from .linalg import char_poly_coefficients, exact_rank, generic_matrix, pfaffian_matrix, polarize
from .poly import MultiPoly


def _require_rep(spec: LieAlgebraSpec):
    if spec.matrix_rep is None:
        raise AlgebraError(f"{spec.name} has no matrix representation")
    return [[list(r) for r in mat] for mat in spec.matrix_rep]


def char_poly_invariants(spec: LieAlgebraSpec) -> List[MultiPoly]:
    """Nonconstant coefficients of det(t I - sum_a x_a rho(B_a)), leading power first,
    each scaled by +-1 so its leading grlex term is positive."""
    rep = _require_rep(spec)
    coeffs = char_poly_coefficients(generic_matrix(rep))
    out = []
    for c in reversed(coeffs[:-1]):
        if not c.is_constant():
            out.append(c.normalize_sign())
    return out


def _is_antisymmetric(rep) -> bool:
    d = len(rep[0])
    return all(mat[i][j] == -mat[j][i] for mat in rep for i in range(d) for j in range(d))


def pfaffian(spec: LieAlgebraSpec) -> MultiPoly:
    """Pfaffian of sum_a x_a rho(B_a) for an antisymmetric representation of even size."""
    rep = _require_rep(spec)
    d = len(rep[0])
    if d % 2:
        raise AlgebraError(f"Pfaffian needs even matrix size, {spec.name} has {d}")
    if not _is_antisymmetric(rep):
        raise AlgebraError(f"{spec.name} representation is not antisymmetric")
    return pfaffian_matrix(generic_matrix(rep))


def base_invariants(spec: LieAlgebraSpec) -> List[MultiPoly]:
    """Generating invariants on the algebra; for so(2k) the Pfaffian replaces its square."""
    invs = char_poly_invariants(spec)
    rep = _require_rep(spec)
    d = len(rep[0])
    if d % 2 == 0 and _is_antisymmetric(rep) and invs:
        pf = pfaffian(spec)
        if not pf.is_zero():
            sq = pf * pf
            invs = [pf.normalize_sign() if p == sq or p == -sq else p for p in invs]
    return invs


@dataclass(frozen=True)
class SlotInvariant:
    """Polynomial on N copies of the algebra; slot h (1-based) uses variables (h-1)*m .. h*m-1."""

    poly: MultiPoly
    degree: int
    generator: int  # index into the base list
    slots: Tuple[int, ...]  # nondecreasing, 1-based

    @property
    def id(self) -> str:
        sep = "" if max(self.slots) < 10 else ","
        return f"p{self.generator + 1}:I{sep.join(str(h) for h in self.slots)}"


@dataclass(frozen=True)
class CurvatureInvariant:
    poly: MultiPoly
    frame: CurvatureFrame
    source: str


def slot_invariants(base: Sequence[MultiPoly], N: int) -> List[SlotInvariant]:
    """Polarize each base generator and evaluate it on every nondecreasing tuple of slots."""
    if N < 1:
        raise ValueError("need at least one slot")
    out = []
    for gi, p in enumerate(base):
        if not p.is_homogeneous() or p.degree() < 1:
            raise ValueError(f"base generator {gi + 1} is not a nonconstant homogeneous polynomial")
        m = p.num_vars
        d = p.degree()
        sp = polarize(p, d)
        for slots in combinations_with_replacement(range(1, N + 1), d):
            # form slot s reads from algebra copy slots[s]
            index_map = [(slots[s] - 1) * m + a for s in range(d) for a in range(m)]
            out.append(SlotInvariant(sp.remap(N * m, index_map), d, gi, tuple(slots)))
    return out


def diagonal_adjoint_fields(spec: LieAlgebraSpec, N: int) -> List[PolyVectorField]:
    """Infinitesimal diagonal adjoint action on N copies of the algebra.

    Slot h is laid out exactly like pair h of a curvature frame, so these are the
    chi fields of any frame with N pairs.
    """
    nv = N * spec.m
    c = spec.dense
    m = spec.m
    fields = []
    for a in range(m):
        coeffs = {}
        for h in range(N):
            for b in range(m):
                lin = {h * m + g: c[b][g][a] for g in range(m) if c[b][g][a]}
                if lin:
                    coeffs[h * m + b] = MultiPoly.linear(nv, lin)
        fields.append(PolyVectorField(nv, coeffs))
    return fields


def push_through_psi(inv: SlotInvariant, frame: CurvatureFrame,
                     pair_order: Optional[Sequence[Tuple[int, int]]] = None) -> CurvatureInvariant:
    """Send slot h to the curvature components on the h-th pair (lexicographic by default)."""
    m = frame.m
    pairs = list(pair_order) if pair_order is not None else frame.pairs
    if inv.poly.num_vars != frame.N * m or len(pairs) != frame.N:
        raise ValueError(f"slot count {inv.poly.num_vars // m} does not match N={frame.N}")
    index_map = []
    for h, (i, j) in enumerate(pairs):
        for a in range(1, m + 1):
            index_map.append(frame.index(a, i, j))
    return CurvatureInvariant(inv.poly.remap(frame.num_vars, index_map), frame, inv.id)


@dataclass
class AnnihilationReport:
    source: str
    ok: bool
    alpha: Optional[int] = None
    residual: Optional[str] = None


def annihilation_check(inv: CurvatureInvariant, spec: LieAlgebraSpec, n: int,
                       chis: Optional[List[PolyVectorField]] = None) -> AnnihilationReport:
    """chi_alpha(inv) must be the zero polynomial for every alpha."""
    frame = CurvatureFrame(n, spec.m)
    if inv.poly.num_vars != frame.num_vars:
        raise ValueError("invariant and frame variable counts differ")
    chis = chis if chis is not None else chi_fields(spec, n)
    for a, chi in enumerate(chis):
        r = chi.apply(inv.poly)
        if not r.is_zero():
            return AnnihilationReport(inv.source, False, a + 1, r.to_text(frame.name))
    return AnnihilationReport(inv.source, True)



def independence_rank(invs: Sequence[CurvatureInvariant], trials: int = DEFAULT_TRIALS,
                      bound: int = DEFAULT_BOUND, seed: int = 42) -> int:
    """Max rank of the Jacobian of ``invs`` over sampled integer points."""
    if not invs:
        return 0
    frame = invs[0].frame
    if any(i.frame != frame for i in invs):
        raise ValueError("invariants must share a frame")
    nv = frame.num_vars
    grads = [[inv.poly.diff(k) for k in range(nv)] for inv in invs]
    best = 0
    for pt in sample_points(nv, trials, bound, seed):
        jac = [[g.evaluate(pt) if g else Fraction(0) for g in row] for row in grads]
        best = max(best, exact_rank(jac))
        if best == min(len(invs), nv):
            break
    return best


def max_independent_count(prof: AlgebraProfile, n: int) -> Optional[int]:
    """m N minus the predicted generic rank; None when no prediction applies."""
    pred = rank_prediction(prof, n)
    if pred.rank is None:
        return None
    N = n * (n - 1) // 2
    return prof.m * N - pred.rank


def curvature_invariants(spec: LieAlgebraSpec, n: int) -> List[CurvatureInvariant]:
    """Base generators, polarized over the N pairs and pushed to curvature coordinates."""
    frame = CurvatureFrame(n, spec.m)
    return [push_through_psi(s, frame) for s in slot_invariants(base_invariants(spec), frame.N)]


def semisimple_bound_holds(prof: AlgebraProfile) -> bool:
    """A semisimple algebra always has m > 2 l."""
    return prof.m > 2 * prof.l

"""Connection coordinates on the first jet bundle, the curvature map in
coordinates, infinitesimal gauge transformations and their prolongation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence

from .distribution import CurvatureFrame, PolyVectorField
from .liealg import LieAlgebraSpec
from .poly import MultiPoly, parse_poly


@dataclass(frozen=True)
class JetFrame:
    """Variables x^i, then A^alpha_i (alpha-major), then A^alpha_{i,j} (alpha-major, (i, j) row-major).

    A^alpha_{i,j} stands for the derivative of A^alpha_i along x^j.
    """

    n: int
    m: int

    @property
    def num_vars(self) -> int:
        return self.n + self.n * self.m + self.n * self.n * self.m

    def x(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"x index {i} outside 1..{self.n}")
        return i - 1

    def a(self, alpha: int, i: int) -> int:
        if not (1 <= alpha <= self.m and 1 <= i <= self.n):
            raise ValueError(f"A index ({alpha},{i}) out of range")
        return self.n + (alpha - 1) * self.n + (i - 1)

    def jet(self, alpha: int, i: int, j: int) -> int:
        if not (1 <= alpha <= self.m and 1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"jet index ({alpha},{i},{j}) out of range")
        return self.n + self.n * self.m + (alpha - 1) * self.n * self.n + (i - 1) * self.n + (j - 1)

    def is_base(self, k: int) -> bool:
        return k < self.n

    def is_fibre(self, k: int) -> bool:
        return self.n <= k < self.n + self.n * self.m

    def name(self, k: int) -> str:
        n, m = self.n, self.m
        if k < n:
            return f"x{k + 1}"
        k -= n
        if k < n * m:
            alpha, i = divmod(k, n)
            return f"A^{alpha + 1}_{i + 1}"
        k -= n * m
        alpha, rest = divmod(k, n * n)
        i, j = divmod(rest, n)
        return f"A^{alpha + 1}_{i + 1},{j + 1}"

    def names(self) -> List[str]:
        return [self.name(k) for k in range(self.num_vars)]

    def var(self, k: int) -> MultiPoly:
        return MultiPoly.variable(self.num_vars, k)


@dataclass(frozen=True)
class GaugeParam:
    """Components g^alpha of an infinitesimal gauge transformation, polynomials in x^1..x^n."""

    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        if not self.g:
            raise ValueError("a gauge parameter needs at least one component")
        nv = self.g[0].num_vars
        if any(p.num_vars != nv for p in self.g):
            raise ValueError("gauge components must share the base variables")

    @property
    def n(self) -> int:
        return self.g[0].num_vars

    @classmethod
    def parse(cls, texts: Sequence[str], n: int) -> "GaugeParam":
        names = [f"x{i + 1}" for i in range(n)]
        return cls(tuple(parse_poly(t, names) for t in texts))

    def to_texts(self) -> List[str]:
        return [p.to_text() for p in self.g]

    def lifted(self, frame: JetFrame) -> List[MultiPoly]:
        return [p.remap(frame.num_vars, list(range(self.n))) for p in self.g]


def curvature_components(spec: LieAlgebraSpec, n: int) -> List[MultiPoly]:
    """R^alpha_jk o Omega for every curvature coordinate, listed in CurvatureFrame order.

    R^alpha_jk = A^alpha_{j,k} - A^alpha_{k,j} - sum_{beta<gamma} c^alpha_{beta gamma}
                 (A^beta_j A^gamma_k - A^gamma_j A^beta_k)
    """
    cf = CurvatureFrame(n, spec.m)
    jf = JetFrame(n, spec.m)
    nv = jf.num_vars
    out = [None] * cf.num_vars
    for (j, k) in cf.pairs:
        for alpha in range(1, spec.m + 1):
            r = jf.var(jf.jet(alpha, j, k)) - jf.var(jf.jet(alpha, k, j))
            for (a, b, g), c in spec.brackets.items():
                if a != alpha:
                    continue
                quad = jf.var(jf.a(b, j)) * jf.var(jf.a(g, k)) - jf.var(jf.a(g, j)) * jf.var(jf.a(b, k))
                r = r - quad.scale(c)
            out[cf.index(alpha, j, k)] = r
    assert all(p is not None and p.num_vars == nv for p in out)
    return out


def gauge_vector_field(spec: LieAlgebraSpec, n: int, g: GaugeParam) -> PolyVectorField:
    """X_C = -(dg^alpha/dx^i - c^alpha_{beta gamma} g^beta A^gamma_i) d/dA^alpha_i."""
    if len(g.g) != spec.m:
        raise ValueError(f"gauge parameter has {len(g.g)} components, algebra has dimension {spec.m}")
    if g.n != n:
        raise ValueError(f"gauge parameter is in {g.n} base variables, expected {n}")
    jf = JetFrame(n, spec.m)
    gl = g.lifted(jf)
    c = spec.dense
    m = spec.m
    coeffs = {}
    for alpha in range(m):
        for i in range(1, n + 1):
            v = -gl[alpha].diff(jf.x(i))
            for b in range(m):
                if gl[b].is_zero():
                    continue
                for gam in range(m):
                    if c[alpha][b][gam]:
                        v = v + gl[b] * jf.var(jf.a(gam + 1, i)).scale(c[alpha][b][gam])
            coeffs[jf.a(alpha + 1, i)] = v
    return PolyVectorField(jf.num_vars, coeffs)


def prolong_vertical(field: PolyVectorField, frame: JetFrame) -> PolyVectorField:
    """First jet prolongation of a field with components only along A^alpha_j.

    The coefficient on A^alpha_{j,i} is dv/dx^i + sum_{beta,k} dv/dA^beta_k * A^beta_{k,i}
    where v is the coefficient on A^alpha_j.
    """
    if field.num_vars != frame.num_vars:
        raise ValueError("field and jet frame variable counts differ")
    for k in field.coeffs:
        if not frame.is_fibre(k):
            raise ValueError(f"field is not vertical: component along {frame.name(k)}")
    n, m = frame.n, frame.m
    coeffs = dict(field.coeffs)
    for (alpha, j), v in ((aj, field.coefficient(frame.a(*aj))) for aj in product(range(1, m + 1), range(1, n + 1))):
        if v.is_zero():
            continue
        used = set(v.variables_used())
        for i in range(1, n + 1):
            w = v.diff(frame.x(i)) if frame.x(i) in used else MultiPoly.zero(frame.num_vars)
            for beta, k in product(range(1, m + 1), range(1, n + 1)):
                idx = frame.a(beta, k)
                if idx in used:
                    w = w + v.diff(idx) * frame.var(frame.jet(beta, k, i))
            coeffs[frame.jet(alpha, j, i)] = w
    return PolyVectorField(frame.num_vars, coeffs)


def lagrangian_from_curvature(poly: MultiPoly, spec: LieAlgebraSpec, n: int,
                              components: Optional[List[MultiPoly]] = None) -> MultiPoly:
    """Compose a function of the curvature coordinates with the curvature map."""
    comps = components if components is not None else curvature_components(spec, n)
    if poly.num_vars != len(comps):
        raise ValueError("polynomial is not on the curvature frame of this algebra and n")
    return poly.compose(comps)


@dataclass
class UtiyamaReport:
    ok: bool
    residual: str = "0"


def gauge_action(spec: LieAlgebraSpec, n: int, g: GaugeParam) -> PolyVectorField:
    return prolong_vertical(gauge_vector_field(spec, n, g), JetFrame(n, spec.m))


def utiyama_check(lagrangian: MultiPoly, spec: LieAlgebraSpec, n: int, g: GaugeParam,
                  on_curvature: bool = True, components: Optional[List[MultiPoly]] = None) -> UtiyamaReport:
    """Apply the prolonged gauge field to L and require a zero result.

    With ``on_curvature`` the input lives on curvature coordinates and is first
    composed with the curvature map; otherwise it is already a function on the jet frame.
    """
    jf = JetFrame(n, spec.m)
    L = lagrangian_from_curvature(lagrangian, spec, n, components) if on_curvature else lagrangian
    if L.num_vars != jf.num_vars:
        raise ValueError("Lagrangian is not on the jet frame")
    res = gauge_action(spec, n, g).apply(L)
    return UtiyamaReport(res.is_zero(), res.to_text(jf.name))


def gauge_family(m: int, n: int) -> List[GaugeParam]:
    """Every monomial of degree <= 2 in x placed in each single component."""
    monomials = [MultiPoly.constant(n, 1)]
    monomials += [MultiPoly.variable(n, i) for i in range(n)]
    monomials += [MultiPoly.variable(n, i) * MultiPoly.variable(n, j) for i in range(n) for j in range(i, n)]
    family = []
    for alpha in range(m):
        for mono in monomials:
            family.append(GaugeParam(tuple(mono if b == alpha else MultiPoly.zero(n) for b in range(m))))
    return family

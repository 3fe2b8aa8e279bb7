"""Apply every gauge parameter of degree <= 2 to every invariant Lagrangian and count failures."""

import sys
import time

from ginv.invariants import curvature_invariants
from ginv.jetgauge import curvature_components, gauge_family, utiyama_check
from ginv.liealg import build_standard

names = sys.argv[1:] or ["sl2", "so3", "so4"]
for name in names:
    spec = build_standard(name)
    for n in (2, 3):
        t0 = time.perf_counter()
        comps = curvature_components(spec, n)
        invs = curvature_invariants(spec, n)
        family = gauge_family(spec.m, n)
        bad = sum(not utiyama_check(i.poly, spec, n, g, components=comps).ok for i in invs for g in family)
        print(f"{name:6} n={n}: {len(invs)} invariants x {len(family)} parameters, "
              f"{bad} failures ({time.perf_counter() - t0:.1f}s)")

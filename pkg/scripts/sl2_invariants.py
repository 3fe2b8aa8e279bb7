"""Build the sl2 curvature invariants at n=3 and certify them."""

from ginv.distribution import chi_fields
from ginv.invariants import annihilation_check, base_invariants, curvature_invariants, independence_rank
from ginv.liealg import build_standard

spec = build_standard("sl2")
n = 3
print("base invariant:", base_invariants(spec)[0].to_text())
invs = curvature_invariants(spec, n)
chis = chi_fields(spec, n)
for inv in invs:
    ok = annihilation_check(inv, spec, n, chis).ok
    print(f"{inv.source:8} {'ok ' if ok else 'BAD'} {inv.poly.to_text(inv.frame.name)}")
print("independence rank:", independence_rank(invs))

"""Collapsing an odd-dimensional algebra along its central idempotents.

When n is odd and the volume element omega squares to +1, (1 +/- eps*omega)/2
split the algebra into two copies of an even-type target.  The folding map
identifies omega with a scalar; a discrete symmetry survives the collapse
exactly when it fixes eps*omega.  The module computes which do, by parity
bookkeeping and by direct action (cross-checked), then classifies what is
left and names the covering group of the survivors.
"""

from cliffork.core_algebra import MultiVector, SignatureSpec, blade_mask
from cliffork.quotient import (
    PHYSICAL_NAMES,
    central_idempotents,
    epsilon_context,
    epsilon_map,
    quotient_class,
    quotient_group,
    transfer_report,
)

ctx = epsilon_context(2, 1)
print(f"collapse of {ctx.sig}: eps = {ctx.epsilon}, omega = {ctx.omega}")

lam_p, lam_m = central_idempotents(ctx)
print(f"  lambda+ = {lam_p}")
print(f"  lambda- = {lam_m}")
assert lam_p * lam_p == lam_p and lam_p * lam_m == lam_m * lam_p * 0
print("  idempotent, orthogonal: checked")
print(f"  collapse targets: {', '.join(str(t) for t in ctx.target_labels)}")

# the folding map sends omega to a scalar and respects products
e12 = MultiVector.from_mask(ctx.sig, blade_mask([1, 2]))
e3 = MultiVector.from_mask(ctx.sig, blade_mask([3]))
print(f"\n  fold(e12) = {epsilon_map(e12, ctx)}")
print(f"  fold(e3)  = {epsilon_map(e3, ctx)}")
assert epsilon_map(e12 * e3, ctx) == epsilon_map(e12, ctx) * epsilon_map(e3, ctx)
print("  fold(xy) == fold(x) fold(y): checked")

transfers = transfer_report(ctx)
print("\nwhich symmetries survive:")
for name in PHYSICAL_NAMES[1:]:
    entry = transfers.entries[name]
    verdict = "survives" if entry.transfers else "blocked "
    print(f"  {name:<4} {verdict}  ({entry.reason})")

cls = quotient_class(ctx)
print(f"\nsymmetry class {cls.label}: {{{', '.join(cls.symmetry_set)}}} over {cls.ring}")

grp = quotient_group(ctx)
print(f"covering label {grp.label}")
print(f"  survivors {{{', '.join(grp.survivors)}}} = {grp.abstract}")
if grp.reductions:
    print(f"  reductions: {', '.join(grp.reductions)}")
for formula in grp.cover_formulas:
    print(f"  {formula}")
for target, cover in sorted(grp.cover_names.items()):
    print(f"  concrete cover over {target}: {cover}")

# a negative omega-square reroutes through the complexification
ctx2 = epsilon_context(SignatureSpec(3, 0, "C"))
print(f"\nsame machinery on {ctx2.sig}: eps = {ctx2.epsilon} (antilinear bar flips it)")
print(f"  class {quotient_class(ctx2).label}, covering {quotient_group(ctx2).label}")

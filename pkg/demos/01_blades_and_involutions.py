"""Exact blade arithmetic and the classical involutions.

Multivectors live over Gaussian rationals, so every product, involution and
volume element below is exact: the checks at the bottom are equalities, not
tolerances.
"""

from cliffork.core_algebra import (
    MultiVector,
    SignatureSpec,
    blade_mask,
    blade_name,
    center_basis,
    volume_element,
    volume_square_sign,
)

sig = SignatureSpec(1, 3)  # e1 squares to +1, e2/e3/e4 square to -1
print(f"working in {sig}")

e1 = MultiVector.from_mask(sig, blade_mask([1]))
e2 = MultiVector.from_mask(sig, blade_mask([2]))
e12 = e1 * e2

print(f"\ne1 * e2           = {e12}")
print(f"e2 * e1           = {e2 * e1}        (anticommute)")
print(f"e1 * e1           = {e1 * e1}")
print(f"e2 * e2           = {e2 * e2}       (negative generator)")

x = MultiVector.scalar(sig, 2) + e1 * 3 + e12
print(f"\nx                 = {x}")
print(f"grade involution  = {x.grade_involution()}   (odd grades flip)")
print(f"reversion         = {x.reversion()}   (grade 2,3 flip)")
print(f"conjugation       = {x.clifford_conjugation()}   (grade 1,2 flip)")

# reversion reverses products: (ab)~ = b~ a~
a = e1 + e12
b = e2 * 5 + MultiVector.scalar(sig, 1)
assert (a * b).reversion() == b.reversion() * a.reversion()
print("\n(ab)~ == b~ a~    checked")

omega = volume_element(sig)
print(f"\nvolume element    = {omega}")
print(f"omega^2           = {omega * omega}  (sign {volume_square_sign(1, 3):+d})")

# even n: the center is the scalars; odd n: scalars plus the volume element
for p, q in [(1, 3), (2, 1)]:
    basis = center_basis(SignatureSpec(p, q))
    names = ", ".join(str(z) for z in basis)
    print(f"center of Cl({p},{q})   = span({names})")

print(f"\nblade names are 1-based: mask 0b1011 is {blade_name(0b1011)}")

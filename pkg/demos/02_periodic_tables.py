"""The mod-8 classification of real Clifford algebras, as printable grids.

Every real Cl(p,q) is a matrix algebra over R, C or H, or a double of one;
which ring occurs depends only on (p-q) mod 8.  The classification module
renders the standard grids; here we print two of them and spot-check the
periodicity directly.
"""

from cliffork.classification import (
    build_table,
    classification_summary,
    complex_matrix_dimension,
    complex_ring_label,
    ring_label,
)


def show(kind, max_index=7):
    cells = build_table(kind, max_index)
    width = max(len(c) for row in cells for c in row)
    print(f"{kind} (rows q = 0..{max_index}, columns p = 0..{max_index})")
    for q, row in enumerate(cells):
        print(f"  q={q}  " + " ".join(c.rjust(width) for c in row))
    print()


show("rings")
show("salingaros")

# the ring depends on (p-q) mod 8 only
for p, q in [(1, 3), (5, 7), (9, 11)]:
    print(f"ring of Cl({p},{q}) = {ring_label(p, q)}")
assert ring_label(1, 3) == ring_label(9, 11)

print()
summary = classification_summary(1, 3)
for key, value in summary.items():
    print(f"  {key}: {value}")

# complex algebras alternate between one and two matrix blocks
print()
for n in range(5):
    print(
        f"C({n}): ring {complex_ring_label(n)}, "
        f"matrix dimension {complex_matrix_dimension(n)}"
    )

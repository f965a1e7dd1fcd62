"""Set systems over product universes: traces, dimension, shifting.

Builds a small two-part universe, shows which boxes a family shatters,
and runs the down-shift to its fixpoint.
"""

from vcn import (
    BoxSpec,
    GroundFamily,
    ProductUniverse,
    SetSystem,
    is_shattered,
    iter_boxes,
    shatter_fn,
    shift,
    trace,
    vc_n_dim,
)

universe = ProductUniverse((3, 3))
print(f"universe: parts {universe.part_sizes}, {universe.tuple_count} cells")

# members are subsets of the 3x3 grid, one bit per cell
members = [
    set(),
    {(0, 0)},
    {(0, 1)},
    {(0, 0), (0, 1)},
    {(1, 0), (1, 1)},
    {(0, 0), (1, 1)},
    {(0, 1), (1, 0)},
    {(0, 0), (0, 1), (1, 0), (1, 1)},
]
system = SetSystem.from_sets(universe, members)
print(f"system with {len(system.members)} members")

box = BoxSpec(((0, 1), (0, 1)))
print(f"\nbox {box.selections}: trace has {len(trace(system, box).members)} sets")
print(f"shattered: {is_shattered(system, box)}")

print("\nshatter function:")
for m in range(0, 3):
    print(f"  pi({m}) = {shatter_fn(system, m)}")
print(f"dimension: {vc_n_dim(system)}")

shattered_boxes = [b.selections for b in iter_boxes(universe, 1) if is_shattered(system, b)]
print(f"shattered 1-boxes: {shattered_boxes}")

# shifting works on plain ground sets; it never loses members and only
# removes shattered sets, never adds them
family = GroundFamily(4, (0b1010, 0b0111, 0b1100, 0b0001))
fixpoint = shift(family)
print(f"\nshift {[bin(m) for m in family.members]}")
print(f"  ->  {[bin(m) for m in fixpoint.members]}")
print(f"fixpoint is stable: {shift(fixpoint) == fixpoint}")

"""Walk through the three involutions of T^7 and where they fix points."""

# %% The group
# Each generator is x -> signs * x + translation on R^7 / Z^7.  Composition
# applies the right-hand map first.
from kummer import fixed_locus, kummer_example, singular_orbits

group = kummer_example()
print(f"|Gamma| = {group.order}")
for i, g in enumerate(group.elements):
    print(f"  {group.name(i)}  {g}")

# %% Fixed tori of the generators
# A reflected coordinate x_i must solve 2 x_i = b_i (mod 1), giving two
# values; a kept coordinate is free as long as its translation vanishes.
for i in group.generator_indices():
    comps = fixed_locus(group.elements[i])
    print(f"{group.name(i)} fixes {len(comps)} tori, e.g. {comps[0]} and {comps[-1]}")

# %% The composites act freely
for i in (0b011, 0b101, 0b110, 0b111):
    print(f"{group.name(i)}: {len(fixed_locus(group.elements[i]))} fixed components")

# %% Orbits
# 48 singular tori fall into 12 orbits of four.  For alpha, the orbit is
# pinned down by the offset on x_4.
for o in singular_orbits(group):
    print(f"stabilizer {group.name(o.stabilizer)}: {len(o)} tori, representative {o.representative}")

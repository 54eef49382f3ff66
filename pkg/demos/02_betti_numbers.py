"""From invariant forms on the torus to the Betti numbers of the resolution."""

# %% Invariant forms
# H^k(T^7 / Gamma; Q) is spanned by the constant k-forms that every group
# element preserves.  In degree 3 these are the seven terms of the G2 form.
from kummer import (
    check_joyce_conditions,
    invariant_basis,
    kummer_example,
    orbifold_betti,
    resolved_betti,
    simply_connected_sufficient,
)
from kummer.cohomology import format_monomial

group = kummer_example()
print("invariant 3-forms:", ", ".join(format_monomial(m) for m in invariant_basis(group, 3)))
print("orbifold Betti numbers:", orbifold_betti(group))

# %% Can the singularities be resolved?
report = check_joyce_conditions(group)
for c in report.conditions:
    print(f"({c.key}) {'ok' if c.passed else 'FAILS'}: {c.description}")
print(simply_connected_sufficient(group).as_dict()["verdict"])

# %% After resolution
# Each orbit contributes H_*(T^3) x H_2(CP^1): one class in degree 2, three
# in degree 3, and their duals.
print("resolved Betti numbers:", resolved_betti(group))

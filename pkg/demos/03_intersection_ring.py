"""The intersection ring of the resolved manifold and its pairings."""

# %% Generators
from kummer import generator_catalogue, kummer_example, pairing_matrix, ring_table
from kummer.ring import associativity_defects, forced_k3_products, massey_candidates

group = kummer_example()
catalogue = generator_catalogue(group)
for d in range(2, 6):
    names = [g.name for g in catalogue.of_dimension(d)]
    print(f"dim {d}: {len(names)} generators, first few {names[:4]}")

# %% Nonzero products
# Every product is computed twice (a.b and b.a) and checked against the
# graded-commutativity sign before the table is returned.
table = ring_table(catalogue)
for line in table.relations()[::8]:
    print(" ", line)
print(f"{len(table.nontrivial())} nonzero entries up to order")

# %% Poincare duality
# The catalogue is ordered so that each pairing matrix comes out diagonal.
for k in (2, 3):
    p = pairing_matrix(table, k)
    print(f"H_{k} x H_{7 - k}: diagonal={p.is_diagonal()}, det = {p.determinant}")

# %% Loose ends
# Products of K3-type tori with exceptional cycles are set to zero by
# convention.  Associativity would force a nonzero value; both are exposed.
defects = associativity_defects(table)
print(f"{len(defects)} associativity defects, e.g. {defects[0]}")
(pair, value), *_ = forced_k3_products(table).items()
print(f"associativity would need {pair[0]} . {pair[1]} = {value}")
print(f"{len(massey_candidates(table))} ordered triples with vanishing consecutive products")

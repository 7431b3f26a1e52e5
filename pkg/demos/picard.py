"""Picard data of the degree-6 models."""
from realcremona.picard import classify_dihedral, generated_group, induced_action, invariant_rank, sigma_action
from realcremona.surfaces import builtin

for mid in ("X2_P3xP1", "X3Q", "X3F0", "X4"):
    m = builtin(mid)
    acts = {name: induced_action(g) for name, g in sorted(m.generators.items())}
    kinds = {name: classify_dihedral(a) for name, a in acts.items()}
    print(f"{mid}: rank {invariant_rank(sigma_action(m))}, group order {len(generated_group(list(acts.values())))}, {kinds}")

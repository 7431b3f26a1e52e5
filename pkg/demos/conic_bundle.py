"""Build the one-pair conic bundle group and inspect its involution."""
from realcremona.conjugacy import Config7
from realcremona.families import FamilySpec, abel_image, build, fixed_double_cover, swaps_sections
from realcremona.maps import is_involution, is_real

inst = build(FamilySpec(7, config7=Config7.of(["1+i"])))
phi = inst.generators["phi"]
print("phi =", phi)
print("real:", is_real(phi), " involution:", is_involution(phi), " swaps sections:", swaps_sections(inst, phi))
res = fixed_double_cover(inst, phi)
print("fixed curve:", res.curve.equations[0], " ok:", res.ok)
print("abelianization image:", abel_image(inst, phi).to_json())

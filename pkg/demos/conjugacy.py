"""Decide conjugacy of parameter configurations and apply the witnesses."""
from realcremona.conjugacy import Config7, Config8, apply7, apply8, canonical7, conjugate7, conjugate8, mat_to_json

a, b = Config7.of(["1+i", "2+i"]), Config7.of(["2+2i", "4+2i"])
ok, w = conjugate7(a, b)
print("pairs:", ok, w.to_json(), apply7(w, a) == b)
print("canonical forms:", canonical7(a) == canonical7(b))

c, d = Config8.of(["0", "1"], ["2+i"]), Config8.of(["1", "2"], ["3+i"])
ok, m = conjugate8(c, d)
print("points:", ok, mat_to_json(m), apply8(m, c) == d)
print("{0,1,2,3} vs {0,1,2,4}:", conjugate8(Config8.of(["0", "1", "2", "3"]), Config8.of(["0", "1", "2", "4"]))[0])

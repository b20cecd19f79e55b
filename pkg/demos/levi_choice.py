"""Show the Levi subgroup picked for each straight class below a fixed lambda.

Run:  python demos/levi_choice.py [datum] [lambda...]
"""
import sys

from adlv.affine import affine
from adlv.catalog import named
from adlv.invariants import nonempty
from adlv.levi import choose_J

name = sys.argv[1] if len(sys.argv) > 1 else "pgl3-flip"
D = named(name)
lam = tuple(int(a) for a in sys.argv[2:]) or (1,) * D.n
A = affine(D)

seen = set()
for x, kap, nubar in A.straight_classes_below(lam):
    if (kap, nubar) in seen or not nonempty(D, lam, x):
        continue
    seen.add((kap, nubar))
    c = choose_J(D, lam, x)
    bad = [k for k, v in c.checks.items() if not v]
    print(f"b={x}  nu={[str(v) for v in nubar]}  J={list(c.J)}  w0={c.w0}  "
          f"chi0={c.chi0}  Ibar={c.ibar}  {'ok' if not bad else bad}")

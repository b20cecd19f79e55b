"""Walk through a component count by hand, then with pi0().

Run:  python demos/pi0_walkthrough.py
"""
from adlv.affine import affine
from adlv.catalog import named
from adlv.invariants import invariants_of, nonempty_report
from adlv.pi0 import pi0

D = named("pgl2")
A = affine(D)
tau = A.elem((1,), D.simple_reflections[0])

for lam, b in [((2,), A.one), ((1,), tau), ((1,), A.one), ((0,), A.one)]:
    inv = invariants_of(D, b)
    rep = nonempty_report(D, lam, b)
    print(f"lambda={lam}  b={b}  kappa={inv.kappa}  nu={[str(v) for v in inv.nu]}")
    if not rep["nonempty"]:
        print("   empty:", rep["criterion"])
        continue
    r = pi0(D, lam, b)
    print(f"   components={r.size}  fiber={r.fiber}  label={r.label}")
    if r.certificate:
        print("   certificate ok:", r.certificate["ok"])

# a twisted example: sigma swaps the two nodes of A2, so pi_1 has no fixed points
F = named("pgl3-flip")
r = pi0(F, (1, 1), affine(F).one)
print("pgl3-flip, lambda=(1,1), b=1:", r.size, "component(s)")

"""Build a chain between two coweights that differ by (1 - sigma)Y and check it.

Run:  python demos/chain_demo.py
"""
from adlv.catalog import named
from adlv.chains import conv_chain
from adlv.checkers import verify_conv_chain

D = named("pgl3-flip")
lam, mu, ups = (2, 2), (2, -1), (-1, 2)
steps, _ = conv_chain(D, mu, ups, lam)
for s in steps:
    print(s.to_json(D))
print("checker:", verify_conv_chain(D, steps, mu, ups, lam) or "valid")

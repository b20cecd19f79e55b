"""Independent re-verification of chain outputs.

Nothing here calls into the chain builders; only the datum's order check and
plain vector arithmetic are used.
"""

from __future__ import annotations

from typing import Sequence


def _below(D, mu, lam) -> bool:
    return D.order_check(mu, lam)["preceq_J"]


def verify_conv_chain(D, steps: Sequence, mu, ups, lam) -> list[str]:
    """Problems found in a conv chain given as (mu_j, alpha_j, r_j) triples; empty if valid."""
    h = D.components
    bad = []
    cur = tuple(mu)
    total = [0] * D.n
    for j, st in enumerate(steps):
        m, a, r = tuple(st.mu), tuple(st.alpha), st.r
        if m != cur:
            bad.append(f"step {j}: start mismatch")
        orbit = [a]
        while True:
            nxt = D.sigma_root(orbit[-1])
            if nxt == a:
                break
            orbit.append(nxt)
        k = len(orbit)
        hi = {h: h - 1, 2 * h: h, 3 * h: 2 * h - 1}.get(k)
        if hi is None or not 1 <= r <= hi:
            bad.append(f"step {j}: r out of range")
        sa = orbit[r % k]
        if sa == a:
            bad.append(f"step {j}: sigma^r fixes alpha")
        av, sv = D.coroot(a), D.coroot(sa)
        w1 = tuple(x + y for x, y in zip(m, av))
        w2 = tuple(x - y for x, y in zip(m, sv))
        w3 = tuple(x + y - z for x, y, z in zip(m, av, sv))
        for tag, w in (("mu", m), ("mu+a", w1), ("mu-sa", w2), ("mu+a-sa", w3)):
            if not _below(D, w, lam):
                bad.append(f"step {j}: {tag} not below lambda")
        total = [t + x - y for t, x, y in zip(total, av, sv)]
        cur = w3
    if cur != tuple(ups):
        bad.append("endpoint mismatch")
    if tuple(t + x for t, x in zip(total, mu)) != tuple(ups):
        bad.append("telescoping sum mismatch")
    return bad

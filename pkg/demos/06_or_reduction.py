"""
Why sqrt(n) queries are unavoidable: OR of n bits
=================================================

Take n bits, give each bit a smooth bump with its own little patch of
[0,1], and add up the bumps for the bits that are 1. The sum is a
legitimate member of the smoothness class, its maximum is either 0 or
the bump height, and telling those two apart IS computing the OR of the
bits. Any maximizer that beats sqrt(n) queries on the class would beat
the known sqrt(n) lower bound for OR, so the maximizer's exponent is
tight.
"""

import numpy as np

from qfmax import (
    decision_rule,
    embed_bits,
    make_bump_family,
    membership_check,
    or_trial,
    trial_rng,
)

# -- the embedding ------------------------------------------------------------
n_bits = 16
family = make_bump_family(n_bits, d=1, r=0, rho=1.0, height=None)
print(f"{n_bits} bumps of radius {family.radius:.4f} and height "
      f"{family.height:.4f}, centers {family.centers[:3].ravel()} ...")

bits = np.zeros(n_bits, dtype=int)
bits[5] = 1
f = embed_bits(bits, family)
xs = np.linspace(0, 1, 2001)[:, None]
print(f"single bit set: max over a fine grid {f(xs).max():.4f} "
      f"(bump height {family.height:.4f})")
print(f"all-zeros input: max {embed_bits(np.zeros(n_bits, int), family)(xs).max():.4f}")

# the embedded sum must genuinely belong to the class the maximizer assumes
quotient = membership_check(f, pairs=4000, rng=np.random.default_rng(0))
print(f"class membership quotient {quotient:.3f} (must be <= 1)")

# -- the decision rule -----------------------------------------------------------
# A maximizer answer within height/4 of the truth separates 0 from height.
h = family.height
for value in (0.0, 0.2 * h, 0.8 * h, h):
    print(f"  reported max {value:.4f} -> OR = {decision_rule(value, h)}")

# -- end to end: maximize, then decide -------------------------------------------
trials = 100
for pattern in ("zeros", "one", "random"):
    hits = 0
    queries = 0.0
    for t in range(trials):
        rng = trial_rng(6, hash(pattern) % 2**32, t)
        b = np.zeros(64, dtype=int)
        if pattern == "one":
            b[rng.integers(64)] = 1
        elif pattern == "random":
            b = rng.integers(0, 2, size=64)
        got, res, _ = or_trial(b, None, None, rng)
        hits += got == int(b.any())
        queries += res.ledger.quantum_queries
    print(f"pattern {pattern:>6}: correct {hits}/{trials}, "
          f"mean quantum queries {queries / trials:.0f}")

"""
Hash families and seed-size bounds
==================================

Build the named families, measure their minimal epsilons by exhaustive
counting, and compare the seed set size against every lower bound.
"""

from fractions import Fraction

from mosaichash import (
    affine,
    classify,
    dual_affine,
    optimal_epsilon,
    seed_lower_bounds,
    transversal,
)


def show(f):
    rep = classify(f)
    print(f"== {f.name}: |X|={f.x_size} |S|={f.s_size} |A|={f.a_size}")
    print(f"   eps_au={rep.eps_au}  eps_acfu={rep.eps_acfu}  eps_asu={rep.eps_asu}")
    print(f"   OCFU={rep.ocfu}  OU={rep.ou}")
    if rep.bounds:
        for name, val in rep.bounds.bounds().items():
            marker = " (tight)" if rep.equality.get(name) else ""
            print(f"   lower bound {name:>12}: {val}{marker}")
    print()


# the affine family attains the universal optimum (|X|-|A|)/(|A|(|X|-1))
# with the smallest possible seed set
show(affine(2, 2))
show(affine(3, 2))

# swapping points and seeds trades a larger epsilon for an even smaller
# seed set; the variance bound becomes tight instead
show(dual_affine(2, 2))

# the transversal family sits between the two: epsilon 1/q, seed set q^2
show(transversal(3))

# the bound calculators work symbolically for any size
X, A = 64, 4
print(f"bounds for |X|={X}, |A|={A} at a few epsilons:")
for eps in (optimal_epsilon(X, A), Fraction(1, A), Fraction(1, 2)):
    rep = seed_lower_bounds(X, A, eps)
    print(f"  eps={eps}: variance={rep.lb_variance} simple={rep.lb_simple} "
          f"ocfu={rep.lb_ocfu} au={rep.lb_au}")

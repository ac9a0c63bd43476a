"""Exhaustive verification: minimal epsilon per hash class and seed bounds.

All epsilons and bound values are exact ``Fraction``s; equality against
the lower bounds is therefore decidable with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InfeasibleEpsilon, NotHomomorphic, NotRegular, TrivialDomain
from .families import DEFAULT_TABLE_BUDGET, HashFamily

CLASSES = ("AU", "ACFU", "ASU", "BALANCED")


def _table_array(f: HashFamily, budget=DEFAULT_TABLE_BUDGET):
    return np.array(f.to_table(budget).entries, dtype=np.int64)


@dataclass
class RegularityResult:
    regular: bool
    block_size: int | None
    counts: dict  # (x_label, a_label) -> count


def regularity_check(f: HashFamily, budget=DEFAULT_TABLE_BUDGET) -> RegularityResult:
    """Check property (ACFU1): every value is hit |S|/|A| times in each row."""
    T = _table_array(f, budget)
    na = f.a_size
    counts = {}
    for i, x in enumerate(f.x_labels):
        hist = np.bincount(T[i], minlength=na)
        for k, a in enumerate(f.a_labels):
            counts[(x, a)] = int(hist[k])
    if f.s_size % na == 0:
        block = f.s_size // na
        if all(c == block for c in counts.values()):
            return RegularityResult(True, block, counts)
    return RegularityResult(False, None, counts)


def _homomorphic_in_x(f: HashFamily, T) -> bool:
    g, ga = f.x_group, f.a_group
    if g is None or ga is None:
        return False
    xi = f.x_index
    ai = f.a_index
    for x in f.x_labels:
        for y in f.x_labels:
            row = tuple(
                ai[ga.add(f.a_labels[u], f.a_labels[v])]
                for u, v in zip(T[xi[x]], T[xi[y]])
            )
            if row != tuple(T[xi[g.add(x, y)]]):
                return False
    return True


def min_epsilon(f: HashFamily, hash_class: str, budget=DEFAULT_TABLE_BUDGET):
    """Least epsilon of the given class, with a lexicographically first witness.

    Returns (epsilon, witness).  Witness tuples use domain labels:
    AU -> (x, x'), ACFU -> (x, x', a), ASU -> (x, x', a, a'),
    BALANCED -> (x, a).
    """
    if hash_class not in CLASSES:
        raise ValueError(f"unknown hash class {hash_class!r}")
    T = _table_array(f, budget)
    nx, ns, na = f.x_size, f.s_size, f.a_size

    if hash_class in ("ACFU", "ASU"):
        reg = regularity_check(f, budget)
        if not reg.regular:
            raise NotRegular(
                f"{f.name} fails (ACFU1)/(ASU1); {hash_class} is unattainable"
            )
        norm = reg.block_size
    elif hash_class == "AU":
        norm = ns
    else:  # BALANCED
        if not _homomorphic_in_x(f, T):
            raise NotHomomorphic(
                f"{f.name} lacks group structure or is not linear in x"
            )
        norm = ns

    best = -1
    witness = None

    if nx < 2 and hash_class != "BALANCED":
        return Fraction(0), None

    if hash_class == "AU":
        for i in range(nx):
            for j in range(i + 1, nx):
                c = int((T[i] == T[j]).sum())
                if c > best:
                    best, witness = c, (f.x_labels[i], f.x_labels[j])
    elif hash_class == "ACFU":
        for i in range(nx):
            for j in range(i + 1, nx):
                eq = T[i] == T[j]
                hist = np.bincount(T[i][eq], minlength=na)
                for k in range(na):
                    c = int(hist[k])
                    if c > best:
                        best = c
                        witness = (f.x_labels[i], f.x_labels[j], f.a_labels[k])
    elif hash_class == "ASU":
        for i in range(nx):
            for j in range(i + 1, nx):
                hist = np.zeros((na, na), dtype=np.int64)
                np.add.at(hist, (T[i], T[j]), 1)
                for k in range(na):
                    for l in range(na):
                        c = int(hist[k, l])
                        if c > best:
                            best = c
                            witness = (
                                f.x_labels[i], f.x_labels[j],
                                f.a_labels[k], f.a_labels[l],
                            )
    else:  # BALANCED, per the bound |{s : f(x,s)=a}| <= eps|S| for x != e
        e = f.x_group.zero
        for i, x in enumerate(f.x_labels):
            if x == e:
                continue
            hist = np.bincount(T[i], minlength=na)
            for k in range(na):
                c = int(hist[k])
                if c > best:
                    best, witness = c, (x, f.a_labels[k])

    if best < 0:
        return Fraction(0), None
    return Fraction(best, norm), witness


def optimal_epsilon(x_size: int, a_size: int) -> Fraction:
    """Universal lower bound (|X|-|A|) / (|A|(|X|-1)) on any AU/ACFU epsilon."""
    if not x_size > a_size >= 2:
        raise TrivialDomain("need |X| > |A| >= 2 for a nontrivial bound")
    return Fraction(x_size - a_size, a_size * (x_size - 1))


@dataclass
class BoundReport:
    x_size: int
    a_size: int
    eps: Fraction
    optimal_eps: Fraction
    lb_variance: Fraction | None  # undefined when its denominator vanishes
    lb_simple: Fraction
    lb_ocfu: Fraction | None  # only at optimal epsilon
    lb_au: Fraction | None
    lb_asu_variance: Fraction | None
    lb_asu_simple: Fraction
    variance_applies: bool
    variance_interval_nonempty: bool
    asu_simple_applies: bool

    def bounds(self) -> dict:
        return {
            "variance": self.lb_variance,
            "simple": self.lb_simple,
            "ocfu": self.lb_ocfu,
            "au": self.lb_au,
            "asu_variance": self.lb_asu_variance,
            "asu_simple": self.lb_asu_simple,
        }

    def to_dict(self) -> dict:
        out = {
            "x_size": self.x_size,
            "a_size": self.a_size,
            "eps": rational_str(self.eps),
            "optimal_eps": rational_str(self.optimal_eps),
            "variance_applies": self.variance_applies,
            "variance_interval_nonempty": self.variance_interval_nonempty,
            "asu_simple_applies": self.asu_simple_applies,
        }
        for name, val in self.bounds().items():
            out["lb_" + name] = rational_str(val)
        return out


def rational_str(x):
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def seed_lower_bounds(x_size: int, a_size: int, eps) -> BoundReport:
    """All seed-size lower bounds for the given epsilon, as exact rationals."""
    eps = Fraction(eps)
    X, A = x_size, a_size
    opt = optimal_epsilon(X, A)
    if eps < opt or eps > 1:
        raise InfeasibleEpsilon(f"eps = {eps} outside [{opt}, 1]")

    den_var = eps * A * (X - A) + A * A - X
    lb_variance = 1 + Fraction(X * (A - 1) ** 2) / den_var if den_var > 0 else None
    lb_au = Fraction(X * (A - 1)) / den_var if den_var > 0 else None
    lb_simple = Fraction(A) / eps
    lb_ocfu = Fraction(A * (X - 1), A - 1) if eps == opt else None
    den_asu = eps * A * (X - 1) + A - X
    lb_asu_variance = (
        1 + Fraction(X * (A - 1) ** 2) / den_asu if den_asu > 0 else None
    )
    lb_asu_simple = Fraction(A) / eps

    # variance bound applies on [opt, (X-A^2)/(X-A)]
    variance_applies = eps <= Fraction(X - A * A, X - A)
    # nonemptiness: X >= (A/2)(A + sqrt((A+3)(A-1)) + 1), squared integer form
    u = 2 * X - A * (A + 1)
    nonempty = u >= 0 and u * u >= A * A * (A + 3) * (A - 1)
    asu_simple_applies = eps >= Fraction(X - A, X - 1)

    return BoundReport(
        X, A, eps, opt, lb_variance, lb_simple, lb_ocfu, lb_au,
        lb_asu_variance, lb_asu_simple,
        variance_applies, nonempty, asu_simple_applies,
    )


@dataclass
class VerificationReport:
    family: str
    x_size: int
    s_size: int
    a_size: int
    regular: bool
    block_size: int | None
    eps_au: Fraction
    eps_acfu: Fraction | None  # None when irregular (NotRegular)
    eps_asu: Fraction | None
    eps_balanced: Fraction | None  # None without a verified group structure
    witnesses: dict = field(default_factory=dict)
    ocfu: bool = False
    ou: bool = False
    bounds: BoundReport | None = None
    equality: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "x_size": self.x_size,
            "s_size": self.s_size,
            "a_size": self.a_size,
            "regular": self.regular,
            "block_size": self.block_size,
            "eps_au": rational_str(self.eps_au),
            "eps_acfu": rational_str(self.eps_acfu)
            if self.eps_acfu is not None
            else "NotRegular",
            "eps_asu": rational_str(self.eps_asu)
            if self.eps_asu is not None
            else "NotRegular",
            "eps_balanced": rational_str(self.eps_balanced),
            "witnesses": {
                k: repr(v) for k, v in self.witnesses.items()
            },
            "ocfu": self.ocfu,
            "ou": self.ou,
            "bounds": self.bounds.to_dict() if self.bounds else None,
            "equality": self.equality,
        }


def classify(f: HashFamily, budget=DEFAULT_TABLE_BUDGET) -> VerificationReport:
    """Full report: regularity, minimal epsilons, bound equalities, OCFU/OU."""
    reg = regularity_check(f, budget)
    witnesses = {}
    eps_au, w = min_epsilon(f, "AU", budget)
    witnesses["AU"] = w

    eps_acfu = eps_asu = None
    if reg.regular:
        eps_acfu, w = min_epsilon(f, "ACFU", budget)
        witnesses["ACFU"] = w
        eps_asu, w = min_epsilon(f, "ASU", budget)
        witnesses["ASU"] = w

    eps_balanced = None
    try:
        eps_balanced, w = min_epsilon(f, "BALANCED", budget)
        witnesses["BALANCED"] = w
    except NotHomomorphic:
        pass

    ocfu = ou = False
    bounds = None
    equality = {}
    if f.x_size > f.a_size >= 2:
        opt = optimal_epsilon(f.x_size, f.a_size)
        ou = eps_au == opt
        if reg.regular:
            ocfu = eps_acfu == opt
            if eps_acfu > 0:
                bounds = seed_lower_bounds(f.x_size, f.a_size, eps_acfu)
                for name, val in bounds.bounds().items():
                    equality[name] = val is not None and Fraction(f.s_size) == val

    return VerificationReport(
        family=f.name,
        x_size=f.x_size,
        s_size=f.s_size,
        a_size=f.a_size,
        regular=reg.regular,
        block_size=reg.block_size,
        eps_au=eps_au,
        eps_acfu=eps_acfu,
        eps_asu=eps_asu,
        eps_balanced=eps_balanced,
        witnesses=witnesses,
        ocfu=ocfu,
        ou=ou,
        bounds=bounds,
        equality=equality,
    )

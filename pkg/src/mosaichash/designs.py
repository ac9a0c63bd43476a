"""Incidence structures, mosaics, and design-theoretic structure checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BadLabeling,
    NotAMosaic,
    SearchBudgetExceeded,
)
from .families import (
    DEFAULT_TABLE_BUDGET,
    FunctionTable,
    HashFamily,
    decode_label,
    encode_label,
)
from .verify import classify, seed_lower_bounds

DEFAULT_NODE_BUDGET = 10**6


class IncidenceStructure:
    """0/1 incidence matrix; rows are points, columns are block indices."""

    def __init__(self, matrix, points=None, block_indices=None):
        m = np.array(matrix, dtype=np.int8)
        if m.ndim != 2 or not np.isin(m, (0, 1)).all():
            raise ValueError("incidence matrix must be a 2-d 0/1 array")
        self.matrix = m
        self.points = tuple(points) if points is not None else tuple(range(m.shape[0]))
        self.block_indices = (
            tuple(block_indices) if block_indices is not None else tuple(range(m.shape[1]))
        )
        if len(self.points) != m.shape[0] or len(self.block_indices) != m.shape[1]:
            raise ValueError("label counts do not match matrix shape")

    @property
    def v(self):
        return self.matrix.shape[0]

    @property
    def b(self):
        return self.matrix.shape[1]

    def dual(self) -> "IncidenceStructure":
        return IncidenceStructure(self.matrix.T, self.block_indices, self.points)

    def to_json(self) -> str:
        return json.dumps(
            {
                "points": [encode_label(p) for p in self.points],
                "block_indices": [encode_label(s) for s in self.block_indices],
                "rows": self.matrix.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "IncidenceStructure":
        obj = json.loads(text)
        return cls(
            obj["rows"],
            [decode_label(p) for p in obj["points"]],
            [decode_label(s) for s in obj["block_indices"]],
        )


class Mosaic:
    """Family of incidence structures whose matrices partition the all-ones matrix."""

    def __init__(self, members, a_labels=None):
        members = list(members)
        if not members:
            raise NotAMosaic("a mosaic needs at least one member")
        shape = members[0].matrix.shape
        if any(d.matrix.shape != shape for d in members):
            raise NotAMosaic("members must share dimensions")
        total = sum(d.matrix.astype(np.int64) for d in members)
        if not (total == 1).all():
            raise NotAMosaic("member matrices do not sum to the all-ones matrix")
        self.members = members
        self.a_labels = (
            tuple(a_labels) if a_labels is not None else tuple(range(len(members)))
        )
        if len(self.a_labels) != len(members):
            raise NotAMosaic("label count does not match member count")

    @property
    def points(self):
        return self.members[0].points

    @property
    def block_indices(self):
        return self.members[0].block_indices

    def to_json(self) -> str:
        return json.dumps(
            {
                "a_labels": [encode_label(a) for a in self.a_labels],
                "members": [json.loads(d.to_json()) for d in self.members],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Mosaic":
        obj = json.loads(text)
        return cls(
            [IncidenceStructure.from_json(json.dumps(d)) for d in obj["members"]],
            [decode_label(a) for a in obj["a_labels"]],
        )


def mosaic_from_function(f: HashFamily, budget=DEFAULT_TABLE_BUDGET) -> Mosaic:
    T = np.array(f.to_table(budget).entries)
    members = [
        IncidenceStructure((T == k).astype(np.int8), f.x_labels, f.s_labels)
        for k in range(f.a_size)
    ]
    return Mosaic(members, f.a_labels)


def function_from_mosaic(m: Mosaic, name="mosaic") -> HashFamily:
    stack = np.stack([d.matrix for d in m.members])
    entries = stack.argmax(axis=0)
    table = FunctionTable(m.points, m.block_indices, m.a_labels, entries.tolist())
    return table.to_family(name)


def dual_mosaic(m: Mosaic) -> Mosaic:
    return Mosaic([d.dual() for d in m.members], m.a_labels)


def sum_mosaic(m: Mosaic) -> IncidenceStructure:
    """Block index set S x A; x incident with (s, a) iff x is in block s of member a."""
    cols = []
    labels = []
    for si, s in enumerate(m.block_indices):
        for ai, a in enumerate(m.a_labels):
            cols.append(m.members[ai].matrix[:, si])
            labels.append((s, a))
    return IncidenceStructure(np.stack(cols, axis=1), m.points, labels)


@dataclass
class DesignParams:
    v: int
    b: int
    constant_k: bool
    k: int | None
    constant_r: bool
    r: int | None
    constant_lambda: bool
    lam: int | None
    is_bibd: bool
    intersection_numbers: tuple
    symmetric: bool
    quasi_symmetric: bool
    relations_ok: bool  # bk = vr and lambda(v-1) = r(k-1) where applicable
    affine_block_count: bool  # b = v + r - 1

    def to_dict(self):
        return {
            "v": self.v, "b": self.b,
            "k": self.k if self.constant_k else None,
            "r": self.r if self.constant_r else None,
            "lambda": self.lam if self.constant_lambda else None,
            "is_bibd": self.is_bibd,
            "intersection_numbers": sorted(self.intersection_numbers),
            "symmetric": self.symmetric,
            "quasi_symmetric": self.quasi_symmetric,
            "relations_ok": self.relations_ok,
            "affine_block_count": self.affine_block_count,
        }


def analyze_structure(d: IncidenceStructure) -> DesignParams:
    """Detect BIBD / quasi-symmetric / symmetric structure by exhaustive counting."""
    m = d.matrix.astype(np.int64)
    v, b = m.shape
    col_sums = m.sum(axis=0)
    row_sums = m.sum(axis=1)
    constant_k = bool((col_sums == col_sums[0]).all()) if b else False
    constant_r = bool((row_sums == row_sums[0]).all()) if v else False
    k = int(col_sums[0]) if constant_k else None
    r = int(row_sums[0]) if constant_r else None

    pair = m @ m.T  # (x, x') -> number of common blocks
    off = pair[~np.eye(v, dtype=bool)]
    constant_lambda = bool((off == off[0]).all()) if off.size else False
    lam = int(off[0]) if constant_lambda else None

    inter = m.T @ m  # (s, s') -> block intersection sizes
    inter_off = inter[~np.eye(b, dtype=bool)]
    numbers = tuple(sorted(set(int(x) for x in inter_off))) if inter_off.size else ()

    is_bibd = constant_k and constant_lambda and k is not None and lam is not None \
        and lam >= 1 and k >= 1
    symmetric = is_bibd and len(numbers) == 1
    quasi_symmetric = is_bibd and len(numbers) == 2

    relations_ok = True
    if constant_k and constant_r:
        relations_ok = relations_ok and b * k == v * r
    if is_bibd and constant_r:
        relations_ok = relations_ok and lam * (v - 1) == r * (k - 1)
    affine_block_count = constant_r and b == v + r - 1

    return DesignParams(
        v, b, constant_k, k, constant_r, r, constant_lambda, lam,
        is_bibd, numbers, symmetric, quasi_symmetric, relations_ok,
        affine_block_count,
    )


@dataclass
class Resolution:
    classes: tuple  # tuple of tuples of block-index positions


class NotResolvable:
    """Returned when an exhaustive search proves no resolution exists."""

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"NotResolvable({self.reason!r})"


def find_resolution(d: IncidenceStructure, node_budget=DEFAULT_NODE_BUDGET):
    """Backtracking partition of block indices into parallel classes.

    Returns the lexicographically first Resolution (classes explored in
    block-index order) or NotResolvable after exhausting the search.
    """
    m = d.matrix.astype(np.int64)
    v, b = m.shape
    row_sums = m.sum(axis=1)
    if v == 0 or b == 0:
        return NotResolvable("empty structure")
    if not (row_sums == row_sums[0]).all():
        return NotResolvable("replication number is not constant")
    r = int(row_sums[0])
    if r == 0 or b % r != 0:
        return NotResolvable(f"block count {b} not divisible into {r} classes")
    class_size = b // r
    full = (1 << v) - 1
    masks = [int(sum(1 << i for i in range(v) if m[i, j])) for j in range(b)]

    nodes = 0
    used = [False] * b
    classes = []

    def build_class(start, members, cover):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded(f"resolution search exceeded {node_budget} nodes")
        if len(members) == class_size:
            if cover != full:
                return False
            classes.append(tuple(members))
            if solve():
                return True
            classes.pop()
            return False
        for j in range(start, b):
            if used[j] or (cover & masks[j]):
                continue
            used[j] = True
            members.append(j)
            if build_class(j + 1, members, cover | masks[j]):
                return True
            members.pop()
            used[j] = False
        return False

    def solve():
        try:
            first = used.index(False)
        except ValueError:
            return True
        used[first] = True
        ok = build_class(first + 1, [first], masks[first])
        if not ok:
            used[first] = False
        return ok

    if solve():
        return Resolution(tuple(classes))
    return NotResolvable("exhaustive search found no resolution")


def mosaic_from_resolution(d: IncidenceStructure, res: Resolution, class_indexing):
    """Build the mosaic whose member a collects, per class, the block labeled a.

    class_indexing[h][i] is the position in a_labels assigned to the i-th
    block of class h; each class must enumerate every member label once.
    """
    n_classes = len(res.classes)
    if len(class_indexing) != n_classes:
        raise BadLabeling("one labeling per parallel class required")
    sizes = {len(c) for c in res.classes}
    if len(sizes) != 1:
        raise BadLabeling("parallel classes must have constant size")
    a_count = sizes.pop()
    # validate the resolution against d
    m = d.matrix
    seen = set()
    for cls in res.classes:
        cover = np.zeros(d.v, dtype=np.int64)
        for j in cls:
            if j in seen:
                raise BadLabeling("block index reused across classes")
            seen.add(j)
            cover += m[:, j]
        if not (cover == 1).all():
            raise BadLabeling("a parallel class does not cover every point once")
    if len(seen) != d.b:
        raise BadLabeling("resolution does not use every block index")

    members = [np.zeros((d.v, n_classes), dtype=np.int8) for _ in range(a_count)]
    for h, (cls, labeling) in enumerate(zip(res.classes, class_indexing)):
        if sorted(labeling) != list(range(a_count)):
            raise BadLabeling(f"class {h} labeling is not a bijection onto A")
        for j, a in zip(cls, labeling):
            members[a][:, h] = m[:, j]
    structures = [
        IncidenceStructure(mm, d.points, tuple(range(n_classes))) for mm in members
    ]
    return Mosaic(structures, tuple(range(a_count)))


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def _refine(m):
    """Stable row/column colorings by iterated signature refinement."""
    v, b = m.shape
    row_colors = np.zeros(v, dtype=np.int64)
    col_colors = np.zeros(b, dtype=np.int64)
    for _ in range(v + b):
        row_sigs = [
            (row_colors[i], tuple(sorted(zip(m[i], col_colors)))) for i in range(v)
        ]
        col_sigs = [
            (col_colors[j], tuple(sorted(zip(m[:, j], row_colors)))) for j in range(b)
        ]
        new_rows = _canon_ids(row_sigs)
        new_cols = _canon_ids(col_sigs)
        if (new_rows == row_colors).all() and (new_cols == col_colors).all():
            break
        row_colors, col_colors = new_rows, new_cols
    return row_colors, col_colors


def _canon_ids(sigs):
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return np.array([order[s] for s in sigs], dtype=np.int64)


def is_isomorphic(a: IncidenceStructure, b: IncidenceStructure) -> bool:
    """Exact isomorphism test: signature refinement plus backtracking row match."""
    A, B = a.matrix.astype(np.int8), b.matrix.astype(np.int8)
    if A.shape != B.shape:
        return False
    v = A.shape[0]
    ra, ca = _refine(A)
    rb, cb = _refine(B)
    if sorted(ra.tolist()) != sorted(rb.tolist()) or sorted(ca.tolist()) != sorted(
        cb.tolist()
    ):
        return False

    AAt = A @ A.T
    BBt = B @ B.T
    mapping = [-1] * v
    used = [False] * v

    def feasible(i, t):
        if ra[i] != rb[t]:
            return False
        for j in range(i):
            if AAt[i, j] != BBt[t, mapping[j]]:
                return False
        return True

    def columns_match():
        # row i of A maps to row mapping[i] of B
        reordered = np.empty_like(A)
        for i in range(v):
            reordered[mapping[i]] = A[i]
        cols_a = sorted(map(tuple, reordered.T.tolist()))
        cols_b = sorted(map(tuple, B.T.tolist()))
        return cols_a == cols_b

    def backtrack(i):
        if i == v:
            return columns_match()
        for t in range(v):
            if used[t] or not feasible(i, t):
                continue
            mapping[i] = t
            used[t] = True
            if backtrack(i + 1):
                return True
            used[t] = False
            mapping[i] = -1
        return False

    return backtrack(0)


# ---------------------------------------------------------------------------
# structure theorems
# ---------------------------------------------------------------------------


@dataclass
class TheoremReport:
    family: str
    implications: list = field(default_factory=list)  # (name, details)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "family": self.family,
            "implications": self.implications,
            "violations": self.violations,
            "ok": self.ok,
        }


def check_structure_theorems(f: HashFamily, budget=DEFAULT_TABLE_BUDGET) -> TheoremReport:
    """Cross-check every applicable bound-equality/structure implication."""
    report = TheoremReport(f.name)
    rep = classify(f, budget)
    mos = mosaic_from_function(f, budget)
    X, S, A = f.x_size, f.s_size, f.a_size

    def record(name, ok, details):
        report.implications.append({"name": name, "ok": ok, "details": details})
        if not ok:
            report.violations.append(name)

    if rep.ocfu:
        lam = rep.eps_acfu * Fraction(S, A)
        expect = dict(v=X, k=X // A, lam=lam, b=S, r=S // A)
        ok = True
        for d in mos.members:
            p = analyze_structure(d)
            if not (
                p.is_bibd
                and p.v == X
                and p.k == X // A
                and Fraction(p.lam) == lam
                and p.b == S
                and p.r == S // A
            ):
                ok = False
        record("ocfu_members_are_bibds", ok, {k: str(v) for k, v in expect.items()})

    if rep.regular and rep.equality.get("variance"):
        mu = rep.eps_acfu * Fraction(S, A)
        ok = True
        details = {"mu": str(mu)}
        for d in dual_mosaic(mos).members:
            p = analyze_structure(d)
            if not (p.quasi_symmetric and set(p.intersection_numbers) == {0, mu}):
                ok = False
            else:
                # mu = (k-1)(lambda-1)/(r-1) + 1 for intersection numbers {0, mu}
                if p.r is not None and p.r > 1:
                    mu_formula = Fraction((p.k - 1) * (p.lam - 1), p.r - 1) + 1
                    if mu_formula != mu:
                        ok = False
                if p.symmetric:
                    ok = False
        record("variance_equality_dual_quasi_symmetric", ok, details)

    if rep.ou:
        total = sum_mosaic(mos)
        p = analyze_structure(total)
        res = find_resolution(total)
        ok = p.is_bibd and isinstance(res, Resolution)
        record("ou_sum_is_resolvable_bibd", ok, {"sum_params": p.to_dict()})
        au_bounds = seed_lower_bounds(X, A, rep.eps_au)
        if au_bounds.lb_au is not None and Fraction(S) == au_bounds.lb_au:
            ok_aff = p.affine_block_count and p.quasi_symmetric
            record("ou_au_equality_sum_is_affine", ok_aff, p.to_dict())

    return report

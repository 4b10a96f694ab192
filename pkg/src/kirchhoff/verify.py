"""Bound evaluators, structural predicates, and theorem verdict generation.

Each verifier exhaustively (or, where stated, on seeded random inputs)
checks one claim over an enumeration space and produces a machine-readable
report: status, counterexamples, extremal witnesses.  Equality cases are
decided structurally, by classifying the complement as a matching, a star,
or one of the small named deletion patterns, never by a general
isomorphism routine; where a witness must be matched against a named
family, edge sets are compared under a relabeling found by backtracking
permutation search (small n only).

Floating Kf values are clustered with a relative tie tolerance of 1e-7;
ties inside tree spaces are re-adjudicated exactly through the integer
Wiener index, which equals the Kirchhoff index on trees.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from . import enumeration as enum
from .enumeration import (
    DEFAULT_BUDGET,
    EnumerationSpec,
    cardinality,
    check_budget,
    complete_edge_table,
    prufer_decode,
    unrank_combination,
    unrank_sequence,
)
from .families import FamilySpec, build, closed_form_kf
from .graphs import (
    Graph,
    complement,
    edit_edge,
    graph6_encode,
    is_connected,
    make_graph,
    merge_at,
)
from .spectral import (
    DisconnectedGraphError,
    kf_spectral,
    kf_vertex,
    laplacian_spectrum,
    tree_count,
    wiener,
)

TIE_TOL = 1e-7
VALUE_TOL = 1e-9

THEOREM_IDS = (
    "min-ordering",
    "lower-bound",
    "upper-bound",
    "tree-count-bound",
    "tree-ordering",
    "unicyclic-max",
    "bicyclic-max",
    "max-ordering",
    "edge-trim",
)


class ParamOutOfRangeError(ValueError):
    """Verifier parameters outside the supported range."""


class MalformedInputError(ValueError):
    """Identity-check inputs do not fit the requested kind."""


# ---------------------------------------------------------------------------
# Structural classification


class ComplementShape(NamedTuple):
    kind: str  # empty | matching | star | pattern | other
    detail: int | str | None


def _shape_of_edges(edges: list[tuple[int, int]]) -> ComplementShape:
    m = len(edges)
    if m == 0:
        return ComplementShape("empty", None)
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    degs = sorted(deg.values(), reverse=True)
    if degs[0] == 1:
        return ComplementShape("matching", m)
    if degs[0] == m and all(d == 1 for d in degs[1:]):
        return ComplementShape("star", m)
    if m == 3:
        if degs == [2, 2, 2]:
            return ComplementShape("pattern", "c3")
        if degs == [2, 2, 1, 1]:
            return ComplementShape("pattern", "p4")
        if degs == [2, 1, 1, 1, 1]:
            return ComplementShape("pattern", "k12+k2")
    return ComplementShape("other", None)


def complement_shape(g: Graph) -> ComplementShape:
    """Classify the complement restricted to its non-isolated vertices."""
    return _shape_of_edges(list(complement(g).edges))


def _pattern_index(edges: tuple[tuple[int, int], ...]) -> int | None:
    """Which of the nine named small deletion patterns a <=3-edge set is."""
    shape = _shape_of_edges(list(edges))
    table = {
        ("empty", None): 1,
        ("matching", 1): 2,
        ("matching", 2): 3,
        ("star", 2): 4,
        ("matching", 3): 5,
        ("pattern", "k12+k2"): 6,
        ("pattern", "p4"): 7,
        ("pattern", "c3"): 8,
        ("star", 3): 9,
    }
    return table.get((shape.kind, shape.detail))


def count_labeled_matchings(n: int, p: int) -> int:
    out = 1
    for i in range(p):
        out *= math.comb(n - 2 * i, 2)
    return out // math.factorial(p)


def count_labeled_stars(n: int, p: int) -> int:
    if p == 1:
        return math.comb(n, 2)
    return n * math.comb(n - 1, p)


# ---------------------------------------------------------------------------
# Isomorphism by backtracking permutation search (small n)


def _iso_count(g1: Graph, g2: Graph, stop_at: int | None = None) -> int:
    """Number of adjacency-preserving bijections g1 -> g2 (early exit option)."""
    if g1.n != g2.n or g1.m != g2.m:
        return 0
    n = g1.n
    deg1 = [g1.degree(v) for v in range(n)]
    deg2 = [g2.degree(v) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return 0
    # order g1's vertices so each (after the first) touches a placed one
    order: list[int] = []
    placed = set()
    pending = sorted(range(n), key=lambda v: -deg1[v])
    while len(order) < n:
        nxt = None
        for v in pending:
            if v in placed:
                continue
            if not order or any(u in placed for u in g1.neighbors(v)):
                nxt = v
                break
        if nxt is None:
            nxt = next(v for v in pending if v not in placed)
        order.append(nxt)
        placed.add(nxt)
    bits2 = g2.adjacency_bits
    count = 0
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        nonlocal count
        if k == n:
            count += 1
            return stop_at is not None and count >= stop_at
        v = order[k]
        nv = g1.neighbors(v)
        for u in range(n):
            if used[u] or deg2[u] != deg1[v]:
                continue
            ok = True
            for w in nv:
                iw = image[w]
                if iw >= 0 and not bits2[u] >> iw & 1:
                    ok = False
                    break
            if ok:
                # non-neighbors must also map to non-neighbors
                for w in order[:k]:
                    if w not in nv and bits2[u] >> image[w] & 1:
                        ok = False
                        break
            if ok:
                image[v] = u
                used[u] = True
                if extend(k + 1):
                    return True
                image[v] = -1
                used[u] = False
        return False

    extend(0)
    return count


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return _iso_count(g1, g2, stop_at=1) > 0


def automorphism_count(g: Graph) -> int:
    return _iso_count(g, g)


def labeled_copy_count(g: Graph) -> int:
    """Number of labeled graphs on g.n vertices isomorphic to g."""
    return math.factorial(g.n) // automorphism_count(g)


# ---------------------------------------------------------------------------
# Bound records


@dataclass(frozen=True)
class BoundRecord:
    n: int
    p: int
    lower_kf: Fraction
    tree_count_lower: int
    upper_kf_full: Fraction | None
    upper_kf_simple: Fraction | None


def bound_eval(n: int, p: int, g: Graph | None = None) -> BoundRecord:
    """Exact bound values for p deletions from K_n.

    The two upper bounds need the graph itself (its spanning-tree count and
    minimum degree) and are None when no graph is supplied.
    """
    if not 2 <= p <= n // 2:
        raise ParamOutOfRangeError(f"bounds need 2 <= p <= n/2, got n={n} p={p}")
    lower = Fraction(n - 1) + Fraction(2 * p, n - 2)
    t_lower = n ** (n - p - 2) * (n - 1) ** (p - 1) * (n - p - 1)
    full = simple = None
    if g is not None:
        if g.n != n:
            raise ParamOutOfRangeError(f"graph has {g.n} vertices, expected {n}")
        t = tree_count(g)
        if t == 0:
            raise DisconnectedGraphError(2)
        delta = min(g.degree(v) for v in range(n))
        base = Fraction(n - 1 - p) + Fraction(n, n - p - 1)
        full = base + Fraction((p - 1) * delta * n ** (n - p - 1) * (n - 1) ** (p - 2), t)
        simple = base + Fraction(n * (p - 1) * delta, (n - 1) * (n - p - 1))
    return BoundRecord(n, p, lower, t_lower, full, simple)


# ---------------------------------------------------------------------------
# Pointwise identity checks


@dataclass(frozen=True)
class IdentityResult:
    kind: str
    ok: bool
    residual: float
    detail: str


def _need(inputs: dict, *names):
    try:
        return tuple(inputs[name] for name in names)
    except KeyError as exc:
        raise MalformedInputError(f"missing input {exc.args[0]!r}") from exc


def check_identity(kind: str, **inputs) -> IdentityResult:
    """Evaluate one pointwise identity or inequality numerically.

    Kinds: ``kf-edge-removal``, ``kf-edge-insertion``, ``spectrum-interlacing``,
    ``complement-spectrum``, ``wiener-dominates-kf``, ``cut-vertex-additivity``,
    ``pendant-tree-vs-path``.  Strict inequalities demand a margin above 1e-7.
    """
    if kind == "kf-edge-removal":
        (g, edge) = _need(inputs, "graph", "edge")
        smaller = edit_edge(g, edge, "remove")
        if not is_connected(smaller):
            raise MalformedInputError(f"removing {edge} disconnects the graph")
        margin = kf_spectral(smaller) - kf_spectral(g)
        return IdentityResult(kind, margin > TIE_TOL, margin, f"Kf rise {margin:.3e}")
    if kind == "kf-edge-insertion":
        (g, edge) = _need(inputs, "graph", "edge")
        larger = edit_edge(g, edge, "add")
        margin = kf_spectral(g) - kf_spectral(larger)
        return IdentityResult(kind, margin > TIE_TOL, margin, f"Kf drop {margin:.3e}")
    if kind == "spectrum-interlacing":
        (g, edge) = _need(inputs, "graph", "edge")
        larger = edit_edge(g, edge, "add")
        mu = laplacian_spectrum(g).values
        mu_plus = laplacian_spectrum(larger).values
        worst = 0.0
        for i in range(g.n):
            worst = max(worst, mu[i] - mu_plus[i])
            if i + 1 < g.n:
                worst = max(worst, mu_plus[i + 1] - mu[i])
        return IdentityResult(kind, worst <= 1e-8, worst, f"interlacing slack {worst:.3e}")
    if kind == "complement-spectrum":
        (g,) = _need(inputs, "graph")
        mu = laplacian_spectrum(g).values
        predicted = sorted([g.n - v for v in mu[: g.n - 1]] + [0.0], reverse=True)
        actual = laplacian_spectrum(complement(g)).values
        worst = max(abs(a - b) for a, b in zip(predicted, actual)) if g.n else 0.0
        return IdentityResult(kind, worst <= 1e-8, worst, f"multiset gap {worst:.3e}")
    if kind == "wiener-dominates-kf":
        (g,) = _need(inputs, "graph")
        w = wiener(g)
        kf = kf_spectral(g)
        gap = w - kf
        is_tree = g.m == g.n - 1
        tight = abs(gap) <= TIE_TOL * max(1.0, w)
        ok = gap >= -VALUE_TOL * max(1.0, w) and (tight == is_tree)
        return IdentityResult(kind, ok, gap, f"W-Kf gap {gap:.3e}, tree={is_tree}")
    if kind == "cut-vertex-additivity":
        (g1, x1, g2, x2) = _need(inputs, "left", "left_vertex", "right", "right_vertex")
        glued = merge_at(g1, x1, g2, x2)
        predicted = (
            kf_spectral(g1)
            + kf_spectral(g2)
            + (g1.n - 1) * kf_vertex(g2, x2)
            + (g2.n - 1) * kf_vertex(g1, x1)
        )
        actual = kf_spectral(glued)
        residual = abs(actual - predicted)
        ok = residual <= 1e-8 * max(1.0, actual)
        return IdentityResult(kind, ok, residual, f"cut-vertex residual {residual:.3e}")
    if kind == "pendant-tree-vs-path":
        (g0, v0, tree, x) = _need(inputs, "base", "attach_at", "tree", "tree_vertex")
        if tree.m != tree.n - 1 or not is_connected(tree):
            raise MalformedInputError("attachment graph must be a tree")
        attached = merge_at(g0, v0, tree, x)
        path = build(FamilySpec("path", (tree.n,)))
        straightened = merge_at(g0, v0, path, 0)
        margin = kf_spectral(straightened) - kf_spectral(attached)
        ok = margin >= -VALUE_TOL * max(1.0, kf_spectral(straightened))
        return IdentityResult(kind, ok, margin, f"path attachment gain {margin:.3e}")
    raise MalformedInputError(f"unknown identity kind {kind!r}")


# ---------------------------------------------------------------------------
# Extremal search


class Witness(NamedTuple):
    rank: int
    graph6: str
    kf: float
    count: int


def _graph_from_subset_rank(n: int, k: int, rank: int, deleted: bool) -> Graph:
    table = complete_edge_table(n)
    subset = unrank_combination(len(table), k, rank)
    chosen = {table[i] for i in subset}
    if deleted:
        return make_graph(n, set(table) - chosen)
    return make_graph(n, chosen)


def _groups_from_pool(
    vals: np.ndarray, ranks: np.ndarray, objective: str, top: int
) -> list[tuple[float, np.ndarray]]:
    """Cluster a candidate pool into value groups; return (lead value, ranks)."""
    if vals.size == 0:
        return []
    sign = -1.0 if objective == "max" else 1.0
    order = np.argsort(sign * vals, kind="stable")
    ids = enum._cluster_groups(vals[order], TIE_TOL)
    groups = []
    for gid in range(min(top, int(ids[-1]) + 1)):
        members = order[ids == gid]
        member_ranks = np.sort(ranks[members])
        lead = vals[members[np.argmin(ranks[members])]]
        groups.append((float(lead), member_ranks))
    return groups


def extremal_search(
    spec: EnumerationSpec,
    objective: str,
    k: int,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[Witness]:
    """Top-k Kirchhoff value groups over the connected members of a space.

    Ties group together (one row per distinct value, with the group's
    labeled-member count); the reported graph comes first in enumeration
    order.  Tree spaces rank by the exact integer Wiener index.
    """
    if objective not in ("min", "max"):
        raise ParamOutOfRangeError(f"objective must be min or max, got {objective!r}")
    if k < 1:
        raise ParamOutOfRangeError("witness count must be >= 1")
    check_budget(spec, budget)
    if spec.mode == "labeled-trees":
        scan = enum.scan_labeled_trees(spec.n, jobs=jobs)
        values = [w for w in range(len(scan.hist)) if scan.hist[w] > 0]
        values.sort(reverse=objective == "max")
        out = []
        for i, w in enumerate(values[:k], start=1):
            g = prufer_decode(unrank_sequence(spec.n, scan.first_rank[w]), spec.n)
            out.append(Witness(i, graph6_encode(g), float(w), int(scan.hist[w])))
        return out
    deleted = spec.mode == "deleted-edges"
    scan = enum.scan_subsets(spec.n, spec.count, deleted, objective, k, TIE_TOL, jobs)
    groups = _groups_from_pool(scan.vals, scan.ranks, objective, k)
    out = []
    for i, (lead, member_ranks) in enumerate(groups, start=1):
        g = _graph_from_subset_rank(spec.n, spec.count, int(member_ranks[0]), deleted)
        out.append(Witness(i, graph6_encode(g), lead, int(member_ranks.size)))
    return out


# ---------------------------------------------------------------------------
# Verification reports


class Counterexample(NamedTuple):
    graph6: str
    observed: str
    expected: str


@dataclass
class VerificationReport:
    theorem_id: str
    params: dict
    status: str = "PASS"
    checked_count: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    extremal_witnesses: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def fail(self, graph6: str, observed: str, expected: str) -> None:
        self.counterexamples.append(Counterexample(graph6, observed, expected))

    def finalize(self, partial: bool = False) -> "VerificationReport":
        if self.counterexamples:
            self.status = "FAIL"
        elif partial or self.checked_count == 0:
            self.status = "PARTIAL"
        else:
            self.status = "PASS"
        return self


REPORT_VERSION = "kirchhoff-report v1"


def format_real(x: float) -> str:
    return f"{x:.12g}"


def format_exact(x: Fraction | int) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render_report(report: VerificationReport) -> str:
    """Serialize to the versioned line format; elapsed time is the footer."""
    lines = [REPORT_VERSION, f"theorem: {report.theorem_id}"]
    for key in sorted(report.params):
        lines.append(f"param: {key} = {report.params[key]}")
    lines.append(f"status: {report.status}")
    lines.append(f"checked: {report.checked_count}")
    lines.append(f"counterexamples: {len(report.counterexamples)}")
    for ce in report.counterexamples:
        lines.append(f"counterexample: {ce.graph6} observed={ce.observed} expected={ce.expected}")
    lines.append(f"witnesses: {len(report.extremal_witnesses)}")
    for w in report.extremal_witnesses:
        lines.append(
            f"witness: rank={w.rank} graph6={w.graph6} kf={format_real(w.kf)} count={w.count}"
        )
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"elapsed_seconds: {report.elapsed_seconds:.3f}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Theorem verifiers


def _require_params(params: dict, *names) -> tuple:
    missing = [name for name in names if name not in params]
    if missing:
        raise ParamOutOfRangeError(f"missing parameter(s): {', '.join(missing)}")
    return tuple(params[name] for name in names)


def _deleted_space_params(params: dict) -> tuple[int, int]:
    n, p = _require_params(params, "n", "p")
    if not 2 <= p <= n // 2:
        raise ParamOutOfRangeError(f"need 2 <= p <= n/2, got n={n} p={p}")
    return n, p


def _iter_deleted_graphs(n: int, p: int) -> Iterator[tuple[tuple, Graph]]:
    table = complete_edge_table(n)
    full = set(table)
    from itertools import combinations

    for subset in combinations(table, p):
        yield subset, make_graph(n, full - set(subset))


def _verify_lower_bound(params, budget, jobs) -> VerificationReport:
    n, p = _deleted_space_params(params)
    report = VerificationReport("lower-bound", {"n": n, "p": p})
    spec = enum.deleted_edges(n, p)
    report.checked_count = check_budget(spec, budget)
    bound = bound_eval(n, p).lower_kf
    bound_f = float(bound)
    scan = enum.scan_subsets(n, p, True, "min", 1, TIE_TOL, jobs)
    groups = _groups_from_pool(scan.vals, scan.ranks, "min", 1)
    lead, member_ranks = groups[0]
    if abs(lead - bound_f) > VALUE_TOL * max(1.0, bound_f):
        report.fail("-", f"min Kf {format_real(lead)}", f"bound {format_exact(bound)}")
    expected_count = count_labeled_matchings(n, p)
    if member_ranks.size != expected_count:
        report.fail(
            "-",
            f"{member_ranks.size} minimizers",
            f"{expected_count} labeled {p}-matchings",
        )
    for rank in member_ranks:
        g = _graph_from_subset_rank(n, p, int(rank), deleted=True)
        shape = complement_shape(g)
        if shape != ComplementShape("matching", p):
            report.fail(
                graph6_encode(g),
                f"complement {shape.kind}",
                f"matching({p})",
            )
    rep = _graph_from_subset_rank(n, p, int(member_ranks[0]), deleted=True)
    report.extremal_witnesses.append(
        Witness(1, graph6_encode(rep), lead, int(member_ranks.size))
    )
    report.notes.append(f"lower bound {format_exact(bound)} attained by every minimizer")
    if scan.connected != scan.checked:
        report.notes.append(f"skipped {scan.checked - scan.connected} disconnected graphs")
    return report.finalize()


def _verify_upper_bound(params, budget, jobs) -> VerificationReport:
    n, p = _deleted_space_params(params)
    report = VerificationReport("upper-bound", {"n": n, "p": p})
    check_budget(enum.deleted_edges(n, p), budget)
    star = build(FamilySpec("kn-minus-star", (n, p)))
    star_kf = closed_form_kf(FamilySpec("kn-minus-star", (n, p)))
    star_kf_f = float(star_kf)
    max_pool: list[tuple[float, tuple]] = []
    checked = 0
    for subset, g in _iter_deleted_graphs(n, p):
        if not is_connected(g):
            continue
        checked += 1
        kf = kf_spectral(g)
        rec = bound_eval(n, p, g)
        full_f = float(rec.upper_kf_full)
        shape = complement_shape(g)
        is_star = shape == ComplementShape("star", p)
        if kf > full_f + VALUE_TOL * max(1.0, full_f):
            report.fail(graph6_encode(g), f"Kf {format_real(kf)}", f"<= full bound {format_real(full_f)}")
        if rec.upper_kf_full > rec.upper_kf_simple:
            report.fail(
                graph6_encode(g),
                f"full {format_exact(rec.upper_kf_full)}",
                f"<= simple {format_exact(rec.upper_kf_simple)}",
            )
        tight = abs(kf - full_f) <= VALUE_TOL * max(1.0, full_f)
        if tight != is_star:
            report.fail(
                graph6_encode(g),
                f"equality-with-bound={tight}, star-complement={is_star}",
                "equality exactly on star complements",
            )
        if not max_pool or kf > max_pool[0][0] + TIE_TOL * max(1.0, kf):
            max_pool = [(kf, subset)]
        elif abs(kf - max_pool[0][0]) <= TIE_TOL * max(1.0, kf):
            max_pool.append((kf, subset))
    report.checked_count = checked
    max_kf = max(v for v, _ in max_pool)
    if abs(max_kf - star_kf_f) > VALUE_TOL * max(1.0, star_kf_f):
        report.fail("-", f"max Kf {format_real(max_kf)}", f"Kf of star deletion {format_exact(star_kf)}")
    expected = count_labeled_stars(n, p)
    if len(max_pool) != expected:
        report.fail("-", f"{len(max_pool)} maximizers", f"{expected} labeled stars")
    for _, subset in max_pool:
        shape = _shape_of_edges(list(subset))
        if shape != ComplementShape("star", p):
            g = make_graph(n, set(complete_edge_table(n)) - set(subset))
            report.fail(graph6_encode(g), f"complement {shape.kind}", f"star({p})")
    report.extremal_witnesses.append(
        Witness(1, graph6_encode(star), max_kf, len(max_pool))
    )
    report.notes.append(
        f"maximum {format_exact(star_kf)} attained exactly on star complements"
    )
    return report.finalize()


def _verify_tree_count_bound(params, budget, jobs) -> VerificationReport:
    n, p = _deleted_space_params(params)
    report = VerificationReport("tree-count-bound", {"n": n, "p": p})
    check_budget(enum.deleted_edges(n, p), budget)
    bound = bound_eval(n, p).tree_count_lower
    checked = 0
    equality_count = 0
    for subset, g in _iter_deleted_graphs(n, p):
        if not is_connected(g):
            continue
        checked += 1
        t = tree_count(g)
        is_star = _shape_of_edges(list(subset)) == ComplementShape("star", p)
        if t < bound:
            report.fail(graph6_encode(g), f"t={t}", f"t >= {bound}")
        if (t == bound) != is_star:
            report.fail(
                graph6_encode(g),
                f"t={t}, star-complement={is_star}",
                f"t == {bound} exactly on star complements",
            )
        if t == bound:
            equality_count += 1
    report.checked_count = checked
    expected = count_labeled_stars(n, p)
    if equality_count != expected:
        report.fail("-", f"{equality_count} equality cases", f"{expected} labeled stars")
    report.notes.append(f"spanning-tree lower bound {bound}")
    return report.finalize()


def _verify_min_ordering(params, budget, jobs) -> VerificationReport:
    (n,) = _require_params(params, "n")
    if n < 6:
        raise ParamOutOfRangeError("min-ordering needs n >= 6 (all nine deletions defined)")
    report = VerificationReport("min-ordering", {"n": n})
    table = complete_edge_table(n)
    per_pattern: dict[int, list[float]] = {i: [] for i in range(1, 10)}
    checked = 0
    for p in range(4):
        spec = enum.deleted_edges(n, p)
        check_budget(spec, budget)
        for block_start, subs in enum.subset_blocks(len(table), p, 0, cardinality(spec), 1 << 14):
            eigs = enum.batch_eigenvalues(n, subs, deleted=True)
            connected, kf = enum.batch_kf(n, eigs)
            checked += subs.shape[0]
            for row in range(subs.shape[0]):
                if not connected[row]:
                    continue
                deleted = tuple(table[i] for i in subs[row])
                pattern = _pattern_index(deleted)
                if pattern is None:
                    g = make_graph(n, set(table) - set(deleted))
                    report.fail(graph6_encode(g), "unclassified deletion pattern",
                                "one of the nine named patterns")
                    continue
                per_pattern[pattern].append(float(kf[row]))
    values = {}
    for i in range(1, 10):
        vals = per_pattern[i]
        spread = max(vals) - min(vals)
        if spread > TIE_TOL:
            report.fail("-", f"g{i} Kf spread {spread:.2e}", "identical across labelings")
        values[i] = min(vals)
        form = closed_form_kf(FamilySpec("gi", (n, i)))
        if form is not None and abs(values[i] - float(form)) > VALUE_TOL * max(1.0, float(form)):
            report.fail("-", f"g{i} Kf {format_real(values[i])}", f"closed form {format_exact(form)}")
        g = build(FamilySpec("gi", (n, i)))
        report.extremal_witnesses.append(
            Witness(i, graph6_encode(g), values[i], len(vals))
        )
    for i in range(1, 9):
        if not values[i + 1] > values[i] + TIE_TOL:
            report.fail(
                "-",
                f"Kf(g{i + 1})={format_real(values[i + 1])} vs Kf(g{i})={format_real(values[i])}",
                f"Kf(g{i + 1}) > Kf(g{i}) strictly",
            )
    report.checked_count = checked
    report.notes.append(
        "every graph within three deletions realizes one of the nine named patterns"
    )
    if n < 11:
        report.notes.append("ordering claimed for n >= 11; smaller n reported as observed")
    return report.finalize()


def _tree_chain(n: int) -> list[tuple[str, FamilySpec]]:
    def star(*branches):
        return FamilySpec("starlike", (n, tuple(sorted(branches, reverse=True))))

    return [
        ("path", FamilySpec("path", (n,))),
        ("T(n-3,1,1)", star(n - 3, 1, 1)),
        ("T(n-4,2,1)", star(n - 4, 2, 1)),
        ("T(1,1;1,1)", FamilySpec("doublebranch", (n, (1, 1), (1, 1)))),
        ("T(n-5,3,1)", star(n - 5, 3, 1)),
        ("T(n-4,1,1,1)", star(n - 4, 1, 1, 1)),
        ("T(1,1;2,1)", FamilySpec("doublebranch", (n, (1, 1), (2, 1)))),
        ("T(n-6,4,1)", star(n - 6, 4, 1)),
    ]


def _verify_tree_ordering(params, budget, jobs) -> VerificationReport:
    (n,) = _require_params(params, "n")
    if n < 9:
        raise ParamOutOfRangeError("tree ordering is stated for n >= 9")
    report = VerificationReport("tree-ordering", {"n": n})
    chain = _tree_chain(n)
    graphs = [(label, build(spec)) for label, spec in chain]
    w_vals = [wiener(g) for _, g in graphs]
    for i, ((label, g), w) in enumerate(zip(graphs, w_vals), start=1):
        report.extremal_witnesses.append(
            Witness(i, graph6_encode(g), float(w), labeled_copy_count(g))
        )
    # the one stated tie, exact through integer Wiener
    if w_vals[5] != w_vals[6]:
        report.fail(
            graph6_encode(graphs[5][1]),
            f"W={w_vals[5]} vs W={w_vals[6]}",
            "exact tie between T(n-4,1,1,1) and T(1,1;2,1)",
        )
    strict_links = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 7)]
    for a, b in strict_links:
        if not w_vals[a] > w_vals[b]:
            report.fail(
                graph6_encode(graphs[b][1]),
                f"W({chain[a][0]})={w_vals[a]}, W({chain[b][0]})={w_vals[b]}",
                f"W({chain[a][0]}) > W({chain[b][0]}) strictly",
            )
    spec = enum.labeled_trees(n)
    size = cardinality(spec)
    partial = False
    if size > budget:
        partial = True
        report.checked_count = len(chain)
        report.notes.append(
            f"exhaustive saturation skipped: {size} trees exceed budget {budget}"
        )
    else:
        scan = enum.scan_labeled_trees(n, jobs=jobs)
        report.checked_count = scan.count
        if scan.count != size:
            report.fail("-", f"scanned {scan.count}", f"{size} labeled trees")
        # every tree at or above W(T(n-6,4,1)) must be one of the named shapes
        cutoff = w_vals[7]
        named_hist: dict[int, int] = {}
        seen: dict[str, int] = {}
        for (_, g), w in zip(graphs, w_vals):
            key = graph6_encode(g)
            if key in seen:
                continue
            seen[key] = w
            named_hist[w] = named_hist.get(w, 0) + labeled_copy_count(g)
        for w in range(cutoff, len(scan.hist)):
            observed = int(scan.hist[w])
            expected = named_hist.get(w, 0)
            if observed != expected:
                rank = scan.first_rank.get(w)
                g6 = (
                    graph6_encode(prufer_decode(unrank_sequence(n, rank), n))
                    if rank is not None
                    else "-"
                )
                report.fail(
                    g6,
                    f"{observed} trees at W={w}",
                    f"{expected} labeled copies of named shapes",
                )
        unnamed_max = 0
        for w in range(len(scan.hist) - 1, -1, -1):
            if int(scan.hist[w]) > named_hist.get(w, 0):
                unnamed_max = w
                break
        if unnamed_max >= cutoff:
            report.fail(
                "-",
                f"unnamed tree at W={unnamed_max}",
                f"all unnamed trees below W(T(n-6,4,1))={cutoff}",
            )
        else:
            report.notes.append(
                f"largest unnamed-tree Wiener value {unnamed_max} < cutoff {cutoff}"
            )
    return report.finalize(partial=partial)


def _witness_family_check(
    report: VerificationReport,
    rank: int,
    lead: float,
    member_ranks: np.ndarray,
    n: int,
    k: int,
    family: FamilySpec,
    label: str,
) -> None:
    """Shared witness adjudication: value, uniqueness count, and isomorphism."""
    expected = closed_form_kf(family)
    expected_f = float(expected)
    model = build(family)
    rep = _graph_from_subset_rank(n, k, int(member_ranks[0]), deleted=False)
    if abs(lead - expected_f) > VALUE_TOL * max(1.0, expected_f):
        report.fail(
            graph6_encode(rep),
            f"max Kf {format_real(lead)}",
            f"{label} Kf {format_exact(expected)}",
        )
    expected_count = labeled_copy_count(model)
    if member_ranks.size != expected_count:
        report.fail(
            graph6_encode(rep),
            f"{member_ranks.size} maximizers",
            f"{expected_count} labelings of {label} (uniqueness)",
        )
    if n <= 9 and not is_isomorphic(rep, model):
        report.fail(graph6_encode(rep), "maximizer shape", f"isomorphic to {label}")
    report.extremal_witnesses.append(
        Witness(rank, graph6_encode(rep), lead, int(member_ranks.size))
    )


def _verify_unicyclic_max(params, budget, jobs) -> VerificationReport:
    (n,) = _require_params(params, "n")
    girths = params.get("girths", (3, 4, 5))
    if n < 5:
        raise ParamOutOfRangeError("unicyclic check needs n >= 5")
    if any(not 3 <= k <= n for k in girths):
        raise ParamOutOfRangeError(f"girths must lie in 3..{n}")
    report = VerificationReport("unicyclic-max", {"n": n, "girths": tuple(girths)})
    check_budget(enum.connected_with_edges(n, n), budget)
    checked, connected, by_girth = enum.scan_unicyclic_by_girth(n, TIE_TOL, jobs)
    report.checked_count = checked
    report.notes.append(f"{connected} connected graphs with n edges")
    global_best = max(float(v.max()) for v, _ in by_girth.values())
    vals3, _ = by_girth[3]
    if abs(global_best - float(vals3.max())) > TIE_TOL:
        report.fail("-", f"overall max {format_real(global_best)} not at cycle length 3",
                    "overall maximizer has cycle length 3")
    for rank_pos, k in enumerate(sorted(set(girths)), start=1):
        if k not in by_girth:
            report.fail("-", f"no connected graphs with cycle length {k}", "nonempty class")
            continue
        vals, ranks = by_girth[k]
        groups = _groups_from_pool(vals, ranks, "max", 1)
        lead, member_ranks = groups[0]
        _witness_family_check(
            report, rank_pos, lead, member_ranks, n, n,
            FamilySpec("lollipop", (n, k)), f"lollipop({n},{k})",
        )
    return report.finalize()


def _verify_bicyclic_max(params, budget, jobs) -> VerificationReport:
    (n,) = _require_params(params, "n")
    if n < 8:
        raise ParamOutOfRangeError("bicyclic maximum is stated for n >= 8")
    report = VerificationReport("bicyclic-max", {"n": n})
    check_budget(enum.connected_with_edges(n, n + 1), budget)
    scan = enum.scan_subsets(n, n + 1, False, "max", 1, TIE_TOL, jobs)
    report.checked_count = scan.checked
    report.notes.append(f"{scan.connected} connected graphs with n+1 edges")
    groups = _groups_from_pool(scan.vals, scan.ranks, "max", 1)
    lead, member_ranks = groups[0]
    _witness_family_check(
        report, 1, lead, member_ranks, n, n + 1,
        FamilySpec("dumbbell", (3, 3, n - 5)), f"dumbbell(3,3,{n - 5})",
    )
    return report.finalize()


def _max_ordering_values(n: int) -> list[tuple[str, Graph, Fraction]]:
    """The ten top families with exact Kf values (trees via integer Wiener)."""
    entries: list[tuple[str, FamilySpec]] = [
        ("path", FamilySpec("path", (n,))),
        ("T(n-3,1,1)", FamilySpec("starlike", (n, (n - 3, 1, 1)))),
        ("P3-lollipop", FamilySpec("lollipop", (n, 3))),
        ("T(n-4,2,1)", FamilySpec("starlike", (n, (n - 4, 2, 1)))),
        ("T(1,1;1,1)", FamilySpec("doublebranch", (n, (1, 1), (1, 1)))),
        ("Q3", FamilySpec("q3", (n,))),
        ("T(n-5,3,1)", FamilySpec("starlike", (n, (n - 5, 3, 1)))),
        ("T(n-4,1,1,1)", FamilySpec("starlike", (n, (n - 4, 1, 1, 1)))),
        ("T(1,1;2,1)", FamilySpec("doublebranch", (n, (1, 1), (2, 1)))),
        ("C33-dumbbell", FamilySpec("dumbbell", (3, 3, n - 5))),
    ]
    out = []
    for label, spec in entries:
        g = build(spec)
        exact = closed_form_kf(spec)
        if exact is None:
            exact = Fraction(wiener(g))  # trees: Kf equals the Wiener index
        out.append((label, g, exact))
    return out


def _verify_max_ordering(params, budget, jobs) -> VerificationReport:
    (n,) = _require_params(params, "n")
    if n < 10:
        raise ParamOutOfRangeError("max-ordering chain needs n >= 10 (distinct families)")
    report = VerificationReport("max-ordering", {"n": n})
    chain = _max_ordering_values(n)
    checked = 0
    for rank, (label, g, exact) in enumerate(chain, start=1):
        numeric = kf_spectral(g)
        checked += 1
        if abs(numeric - float(exact)) > VALUE_TOL * max(1.0, float(exact)):
            report.fail(
                graph6_encode(g),
                f"{label} numeric {format_real(numeric)}",
                f"closed form {format_exact(exact)}",
            )
        report.extremal_witnesses.append(Witness(rank, graph6_encode(g), float(exact), 1))
    values = [exact for _, _, exact in chain]
    labels = [label for label, _, _ in chain]
    tie = (7, 8)
    if values[tie[0]] != values[tie[1]]:
        report.fail("-", f"{labels[tie[0]]}={format_exact(values[tie[0]])}, "
                         f"{labels[tie[1]]}={format_exact(values[tie[1]])}",
                    "stated exact tie")
    for a in range(9):
        b = a + 1
        checked += 1
        if (a, b) == tie:
            continue
        if not values[a] > values[b]:
            report.fail(
                "-",
                f"Kf({labels[a]})={format_exact(values[a])}, Kf({labels[b]})={format_exact(values[b])}",
                f"Kf({labels[a]}) > Kf({labels[b]}) strictly",
            )
    ceiling = values[-1]  # dumbbell(3,3,n-5)
    below: list[tuple[str, FamilySpec]] = [
        ("R3", FamilySpec("r3", (n,))),
        ("P4-lollipop", FamilySpec("lollipop", (n, 4))),
        ("cycle", FamilySpec("cycle", (n,))),
        ("C3(1,n-4)", FamilySpec("tripath", (n, (1, n - 4)))),
        ("C3(2,n-5)", FamilySpec("tripath", (n, (2, n - 5)))),
        ("CQ3", FamilySpec("cq3", (n,))),
    ]
    for label, spec in below:
        g = build(spec)
        numeric = kf_spectral(g)
        checked += 1
        exact = closed_form_kf(spec)
        if exact is not None and abs(numeric - float(exact)) > VALUE_TOL * max(1.0, float(exact)):
            report.fail(
                graph6_encode(g),
                f"{label} numeric {format_real(numeric)}",
                f"closed form {format_exact(exact)}",
            )
        if not numeric < float(ceiling) - TIE_TOL:
            report.fail(
                graph6_encode(g),
                f"Kf({label})={format_real(numeric)}",
                f"strictly below Kf(C33-dumbbell)={format_exact(ceiling)}",
            )
    report.checked_count = checked
    return report.finalize()


def random_connected_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Uniform random labeled tree plus random extra edges; connected by build."""
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ParamOutOfRangeError(f"no connected graph with n={n}, m={m}")
    if n == 1:
        return make_graph(1, [])
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    g = prufer_decode(seq, n)
    edges = set(g.edges)
    missing = [e for e in complete_edge_table(n) if e not in edges]
    rng.shuffle(missing)
    edges.update(missing[: m - (n - 1)])
    return make_graph(n, edges)


def _verify_edge_trim(params, budget, jobs) -> VerificationReport:
    (n, m) = _require_params(params, "n", "m")
    trials = params.get("trials", 20)
    seed = params.get("seed", 0)
    if m <= n + 1:
        raise ParamOutOfRangeError("edge trimming needs m > n+1")
    if m > n * (n - 1) // 2:
        raise ParamOutOfRangeError(f"no graph with n={n}, m={m}")
    report = VerificationReport(
        "edge-trim", {"n": n, "m": m, "trials": trials, "seed": seed}
    )
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        g = random_connected_graph(rng, n, m)
        current = g
        kf = kf_spectral(current)
        for _ in range(m - (n + 1)):
            non_cut = [
                e
                for e in current.edges
                if is_connected(edit_edge(current, e, "remove"))
            ]
            edge = non_cut[rng.randrange(len(non_cut))]
            nxt = edit_edge(current, edge, "remove")
            nxt_kf = kf_spectral(nxt)
            checked += 1
            if not nxt_kf > kf + TIE_TOL:
                report.fail(
                    graph6_encode(current),
                    f"Kf {format_real(kf)} -> {format_real(nxt_kf)} removing {edge}",
                    "strict increase",
                )
            current, kf = nxt, nxt_kf
    report.checked_count = checked
    report.notes.append("each trial trims a random connected graph down to n+1 edges")
    return report.finalize()


_VERIFIERS = {
    "lower-bound": _verify_lower_bound,
    "upper-bound": _verify_upper_bound,
    "tree-count-bound": _verify_tree_count_bound,
    "min-ordering": _verify_min_ordering,
    "tree-ordering": _verify_tree_ordering,
    "unicyclic-max": _verify_unicyclic_max,
    "bicyclic-max": _verify_bicyclic_max,
    "max-ordering": _verify_max_ordering,
    "edge-trim": _verify_edge_trim,
}


def verify_theorem(
    theorem_id: str,
    params: dict,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> VerificationReport:
    """Run one theorem verifier and return its report."""
    if theorem_id not in _VERIFIERS:
        raise ParamOutOfRangeError(
            f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}"
        )
    start = time.perf_counter()
    report = _VERIFIERS[theorem_id](params, budget, jobs)
    report.elapsed_seconds = time.perf_counter() - start
    return report

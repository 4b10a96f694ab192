"""Acceptance gate: one test per verification criterion.

Each test prints a single ``criterion N (<name>): PASS|FAIL (t s)`` line and
enforces the criterion at its stated tolerance and runtime budget.

Two criteria are implemented faithfully and fail on genuine mathematical
grounds, reproduced exhaustively by this engine (details pinned in
TestDocumentedDefects below, which must stay green):

* tree-ordering at n in {9, 10}: the claimed strict chain has an unstated
  equality at n=9 (W(T(1,1;1,1)) = W(T(n-5,3,1)) = 108) and a reversed link
  at both sizes (W(T(n-4,1,1,1)) = W(T(1,1;2,1)) < W(T(n-6,4,1)) whenever
  n < 13, with equality at n=13).
* max-ordering: Kf(C3(1,n-4)) = (n^3-19n+50)/6 exceeds
  Kf(C33) = (n^3-21n+36)/6 for every n, so that family can never fall
  strictly below the two-triangle dumbbell.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from kirchhoff.enumeration import complete_edge_table
from kirchhoff.families import FamilySpec, build, closed_form_kf
from kirchhoff.graphs import complement, edit_edge, merge_at, shortest_paths
from kirchhoff.spectral import (
    kf_resistance,
    kf_spectral,
    kf_vertex,
    laplacian_spectrum,
    resistance_matrix,
    tree_count,
    wiener,
)
from kirchhoff.verify import random_connected_graph, render_report, verify_theorem

JOBS = 2


def _report_line(number, name, ok, elapsed):
    print(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s)")


def _run_verifier(theorem, params):
    report = verify_theorem(theorem, params, jobs=JOBS)
    return report


def _catalog_instances(max_n=40):
    """Every catalogued family instance with 2 <= n <= max_n."""
    out = []
    for n in range(2, max_n + 1):
        out.append(FamilySpec("path", (n,)))
        out.append(FamilySpec("complete", (n,)))
        if n >= 3:
            out.append(FamilySpec("cycle", (n,)))
        for k in range(3, n + 1):
            out.append(FamilySpec("lollipop", (n, k)))
        if n >= 5:
            out.append(FamilySpec("starlike", (n, tuple(sorted((n - 4, 2, 1), reverse=True)))))
            out.append(FamilySpec("tripath", (n, (1, n - 4))))
        if n >= 6:
            out.append(FamilySpec("starlike", (n, tuple(sorted((n - 5, 3, 1), reverse=True)))))
            out.append(FamilySpec("q3", (n,)))
            out.append(FamilySpec("tripath", (n, (2, n - 5))))
            out.append(FamilySpec("dumbbell", (3, 3, n - 5)))
        if n >= 7:
            out.append(FamilySpec("starlike", (n, tuple(sorted((n - 6, 4, 1), reverse=True)))))
            out.append(FamilySpec("r3", (n,)))
        if n >= 8:
            out.append(FamilySpec("doublebranch", (n, (1, 1), (2, 1))))
        for p in range(1, n // 2 + 1):
            if n >= 3:
                out.append(FamilySpec("kn-minus-matching", (n, p)))
        for p in range(1, n - 1):
            if n >= 3:
                out.append(FamilySpec("kn-minus-star", (n, p)))
        for i in (1, 2, 3, 4, 5, 9):
            minimum = {1: 2, 2: 3, 3: 4, 4: 4, 5: 6, 9: 5}[i]
            if n >= minimum:
                out.append(FamilySpec("gi", (n, i)))
    return out


class TestCriterion1ClosedFormRegression:
    def test_catalog_regression(self):
        start = time.perf_counter()
        instances = _catalog_instances(40)
        failures = []
        checked = 0
        for spec in instances:
            exact = closed_form_kf(spec)
            if exact is None:
                continue
            g = build(spec)
            if g.n < 2:
                continue
            checked += 1
            numeric = kf_spectral(g)
            if abs(numeric - float(exact)) > 1e-8 * max(1.0, abs(float(exact))):
                failures.append((spec, exact, numeric))
        elapsed = time.perf_counter() - start
        ok = not failures and elapsed < 30.0
        _report_line(1, "closed-form regression", ok, elapsed)
        assert checked > 2000
        assert not failures, failures[:5]
        assert elapsed < 30.0, f"runtime {elapsed:.1f}s over the 30 s budget"


class TestCriterion2LowerBoundExhaustive:
    def test_lower_bound_all_spaces(self):
        start = time.perf_counter()
        for n in (6, 7, 8):
            for p in range(2, n // 2 + 1):
                report = _run_verifier("lower-bound", {"n": n, "p": p})
                assert report.status == "PASS", render_report(report)
                assert report.checked_count == math.comb(n * (n - 1) // 2, p)
        elapsed = time.perf_counter() - start
        _report_line(2, "deletion lower bound exhaustive", True, elapsed)
        assert elapsed < 120.0


class TestCriterion3UpperBoundExhaustive:
    def test_upper_and_tree_count_bounds(self):
        start = time.perf_counter()
        for n in (6, 7, 8):
            for p in range(2, n // 2 + 1):
                upper = _run_verifier("upper-bound", {"n": n, "p": p})
                assert upper.status == "PASS", render_report(upper)
                trees = _run_verifier("tree-count-bound", {"n": n, "p": p})
                assert trees.status == "PASS", render_report(trees)
        elapsed = time.perf_counter() - start
        _report_line(3, "deletion upper + spanning-tree bounds", True, elapsed)
        assert elapsed < 180.0


class TestCriterion4MinOrdering:
    def test_nine_smallest_families(self):
        start = time.perf_counter()
        for n in (11, 12, 13):
            report = _run_verifier("min-ordering", {"n": n})
            assert report.status == "PASS", render_report(report)
        elapsed = time.perf_counter() - start
        _report_line(4, "nine smallest Kf families", True, elapsed)
        assert elapsed < 60.0


class TestCriterion5TreeOrdering:
    def test_tree_chain_exhaustive(self):
        start = time.perf_counter()
        reports = {n: _run_verifier("tree-ordering", {"n": n}) for n in (9, 10)}
        elapsed = time.perf_counter() - start
        ok = all(r.status == "PASS" for r in reports.values()) and elapsed < 300.0
        _report_line(5, "tree ordering exhaustive", ok, elapsed)
        assert elapsed < 300.0
        problems = []
        for n, report in reports.items():
            for ce in report.counterexamples:
                problems.append(f"n={n}: observed {ce.observed}; expected {ce.expected}")
        assert not problems, (
            "tree-ordering chain fails exhaustively at the stated sizes "
            "(see TestDocumentedDefects.test_tree_chain_defects_pinned):\n"
            + "\n".join(problems)
        )


class TestCriterion6UnicyclicMax:
    def test_unicyclic_maximizers(self):
        start = time.perf_counter()
        for n in (7, 8):
            report = _run_verifier("unicyclic-max", {"n": n, "girths": (3, 4, 5)})
            assert report.status == "PASS", render_report(report)
            top = report.extremal_witnesses[0]
            expected = float(closed_form_kf(FamilySpec("lollipop", (n, 3))))
            assert abs(top.kf - expected) <= 1e-9 * expected
        elapsed = time.perf_counter() - start
        _report_line(6, "unicyclic maximizers by cycle length", True, elapsed)
        assert elapsed < 120.0


class TestCriterion7BicyclicMax:
    def test_bicyclic_maximizer(self):
        start = time.perf_counter()
        report = _run_verifier("bicyclic-max", {"n": 8})
        elapsed = time.perf_counter() - start
        assert report.status == "PASS", render_report(report)
        top = report.extremal_witnesses[0]
        assert abs(top.kf - (512 - 168 + 36) / 6) <= 1e-9 * top.kf
        _report_line(7, "bicyclic maximizer n=8", True, elapsed)
        assert elapsed < 600.0


class TestCriterion8MaxOrderingChain:
    def test_edge_trim_substitute(self):
        # the "every other graph" quantifier is covered by the exhaustive
        # items plus repeated trimming of random dense graphs down to n+1 edges
        report = _run_verifier("edge-trim", {"n": 12, "m": 24, "trials": 25, "seed": 271828})
        assert report.status == "PASS", render_report(report)

    def test_top_ten_chain(self):
        start = time.perf_counter()
        failing = {}
        for n in range(28, 41):
            report = _run_verifier("max-ordering", {"n": n})
            if report.status != "PASS":
                failing[n] = report.counterexamples
        elapsed = time.perf_counter() - start
        ok = not failing and elapsed < 30.0
        _report_line(8, "largest-Kf ordering chain", ok, elapsed)
        assert elapsed < 30.0
        problems = [
            f"n={n}: observed {ce.observed}; expected {ce.expected}"
            for n, ces in failing.items()
            for ce in ces
        ]
        assert not problems, (
            "one link of the stated top-ten ordering is false for every n "
            "(see TestDocumentedDefects.test_top_ten_defect_pinned):\n"
            + "\n".join(problems)
        )


class TestCriterion9IdentitySuite:
    def test_identities_on_seeded_graphs(self):
        start = time.perf_counter()
        rng = random.Random(20260809)
        for _ in range(1000):
            n = rng.randint(4, 20)
            m = rng.randint(n - 1, n * (n - 1) // 2)
            g = random_connected_graph(rng, n, m)
            kf_s = kf_spectral(g)
            kf_r = kf_resistance(g)
            assert abs(kf_s - kf_r) <= 1e-9 * max(1.0, kf_s)
            r = resistance_matrix(g).r
            assert (r >= -1e-10).all()
            assert np.abs(r - r.T).max() <= 1e-10
            for k in range(0, n, max(1, n // 4)):
                assert (r <= r[:, [k]] + r[[k], :] + 1e-10).all()
            all_tight = True
            for u in range(n):
                dist = shortest_paths(g, u).dist
                for v in range(n):
                    assert r[u, v] <= dist[v] + 1e-9
                    if abs(r[u, v] - dist[v]) > 1e-7:
                        all_tight = False
            assert all_tight == (tree_count(g) == 1)
            mu = laplacian_spectrum(g).values
            predicted = sorted([n - v for v in mu[:-1]] + [0.0], reverse=True)
            actual = laplacian_spectrum(complement(g)).values
            assert max(abs(a - b) for a, b in zip(predicted, actual)) <= 1e-8
            missing = [e for e in complete_edge_table(n) if e not in g.edge_set]
            if missing:
                extra = missing[rng.randrange(len(missing))]
                nu = laplacian_spectrum(edit_edge(g, extra, "add")).values
                for i in range(n):
                    assert nu[i] >= mu[i] - 1e-8
                    if i + 1 < n:
                        assert mu[i] >= nu[i + 1] - 1e-8
        for _ in range(200):
            n1, n2 = rng.randint(3, 10), rng.randint(3, 10)
            g1 = random_connected_graph(rng, n1, rng.randint(n1 - 1, n1 * (n1 - 1) // 2))
            g2 = random_connected_graph(rng, n2, rng.randint(n2 - 1, n2 * (n2 - 1) // 2))
            x1, x2 = rng.randrange(n1), rng.randrange(n2)
            glued = merge_at(g1, x1, g2, x2)
            predicted = (
                kf_spectral(g1) + kf_spectral(g2)
                + (n1 - 1) * kf_vertex(g2, x2) + (n2 - 1) * kf_vertex(g1, x1)
            )
            actual = kf_spectral(glued)
            assert abs(actual - predicted) <= 1e-8 * max(1.0, actual)
        elapsed = time.perf_counter() - start
        _report_line(9, "identity suite on 1000 seeded graphs", True, elapsed)
        assert elapsed < 120.0


class TestCriterion10R3Adjudication:
    def test_r3_closed_form(self):
        start = time.perf_counter()
        for n in (10, 20, 28):
            numeric = kf_spectral(build(FamilySpec("r3", (n,))))
            exact = (n**3 - 23 * n + 66) / 6
            assert abs(numeric - exact) <= 1e-8 * exact
            assert closed_form_kf(FamilySpec("r3", (n,))) == Fraction(n**3 - 23 * n + 66, 6)
        elapsed = time.perf_counter() - start
        _report_line(10, "R3 closed-form adjudication", True, elapsed)


class TestDocumentedDefects:
    """Pin the exact values behind the two expected criterion failures."""

    def test_tree_chain_defects_pinned(self):
        # n=9: the two starlike shapes coincide and tie the double-branch tree
        w9 = {
            "T(1,1;1,1)": wiener(build(FamilySpec("doublebranch", (9, (1, 1), (1, 1))))),
            "T(n-5,3,1)": wiener(build(FamilySpec("starlike", (9, (4, 3, 1))))),
            "tie-pair": wiener(build(FamilySpec("starlike", (9, (5, 1, 1, 1))))),
        }
        assert w9["T(1,1;1,1)"] == w9["T(n-5,3,1)"] == 108
        assert w9["tie-pair"] == 104  # sits BELOW T(n-6,4,1) = T(n-5,3,1) = 108
        # n=10: the tie pair sits strictly below T(n-6,4,1)
        tie10 = wiener(build(FamilySpec("starlike", (10, (6, 1, 1, 1)))))
        t641 = wiener(build(FamilySpec("starlike", (10, (4, 4, 1)))))
        assert (tie10, t641) == (146, 149)
        # the reversed link rights itself exactly at n=13 and holds from 14 on
        for n, relation in ((13, 0), (14, 1), (20, 1)):
            tie = wiener(build(FamilySpec("starlike", (n, (n - 4, 1, 1, 1)))))
            last = wiener(build(FamilySpec("starlike", (n, tuple(sorted((n - 6, 4, 1), reverse=True))))))
            assert (tie - last > 0) == bool(relation)
            assert (tie - last == 0) == (n == 13)
        report = verify_theorem("tree-ordering", {"n": 14})
        assert report.status == "PARTIAL" and not report.counterexamples

    def test_top_ten_defect_pinned(self):
        # Kf(C3(1,n-4)) - Kf(C33 dumbbell) = (2n+14)/6 > 0 for every n
        for n in (10, 28, 40):
            short_pendant = closed_form_kf(FamilySpec("tripath", (n, (1, n - 4))))
            dumbbell = closed_form_kf(FamilySpec("dumbbell", (3, 3, n - 5)))
            assert short_pendant - dumbbell == Fraction(2 * n + 14, 6)
            numeric = kf_spectral(build(FamilySpec("tripath", (n, (1, n - 4)))))
            assert abs(numeric - float(short_pendant)) <= 1e-9 * float(short_pendant)

    def test_max_ordering_other_families_do_fall_below(self):
        # everything else in the stated list genuinely sits below the dumbbell
        for n in (28, 34, 40):
            ceiling = float(closed_form_kf(FamilySpec("dumbbell", (3, 3, n - 5))))
            for spec in (
                FamilySpec("r3", (n,)),
                FamilySpec("lollipop", (n, 4)),
                FamilySpec("cycle", (n,)),
                FamilySpec("tripath", (n, (2, n - 5))),
                FamilySpec("cq3", (n,)),
            ):
                assert kf_spectral(build(spec)) < ceiling - 1e-7

    def test_max_ordering_ten_chain_itself_holds(self):
        # the ten named values are correctly ordered; only the "everything
        # else falls below the dumbbell" clause is broken
        report = verify_theorem("max-ordering", {"n": 28})
        assert report.status == "FAIL"
        assert all("C3(1,n-4)" in ce.observed for ce in report.counterexamples)

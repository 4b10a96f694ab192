"""Enumeration spaces for exhaustive verification, with bulk scan kernels.

Three labeled spaces are supported (no isomorphism reduction; universally
quantified claims are safe to check with duplicates):

* ``deleted-edges``: K_n minus every p-subset of its edges;
* ``labeled-trees``: the tree decoded from every length-(n-2) sequence over
  the vertex alphabet (smallest-leaf decoding rule);
* ``connected-with-edges``: every m-subset of E(K_n), filtered to connected.

Cardinalities are computed up front and checked against a budget so large
requests refuse gracefully.  The bulk kernels process subsets in blocks of
a few tens of thousands through batched dense eigensolves; work splits into
disjoint rank ranges whose partial results merge associatively, so the scan
output is identical for any worker count.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterator

import numpy as np

from .graphs import Graph, is_connected, make_graph

DEFAULT_BUDGET = 10**8

# Spectral gap threshold separating "zero" eigenvalues from the algebraic
# connectivity of a connected graph (>= 2(1-cos(pi/n)), about 0.0026 at
# n=62, many orders above eigensolver noise).
_CONN_TOL = 1e-6


class BudgetExceededError(ValueError):
    """Requested space is larger than the enumeration budget."""

    def __init__(self, cardinality: int, budget: int):
        super().__init__(f"space has {cardinality} members, budget is {budget}")
        self.cardinality = cardinality
        self.budget = budget


@dataclass(frozen=True)
class EnumerationSpec:
    """A quantifier domain: mode, size parameters, and connectivity filter."""

    mode: str
    n: int
    count: int | None = None
    connected_only: bool = False


def deleted_edges(n: int, p: int) -> EnumerationSpec:
    if not 0 <= p <= n * (n - 1) // 2:
        raise ValueError(f"cannot delete {p} edges from K_{n}")
    return EnumerationSpec("deleted-edges", n, p)


def labeled_trees(n: int) -> EnumerationSpec:
    if n < 2:
        raise ValueError("labeled trees need n >= 2")
    return EnumerationSpec("labeled-trees", n, None, connected_only=True)


def connected_with_edges(n: int, m: int) -> EnumerationSpec:
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"no {m}-edge graphs on {n} vertices")
    return EnumerationSpec("connected-with-edges", n, m, connected_only=True)


def cardinality(spec: EnumerationSpec) -> int:
    """Exact number of raw members (before any connectivity filtering)."""
    full = spec.n * (spec.n - 1) // 2
    if spec.mode == "deleted-edges":
        return math.comb(full, spec.count)
    if spec.mode == "labeled-trees":
        return spec.n ** (spec.n - 2)
    if spec.mode == "connected-with-edges":
        return math.comb(full, spec.count)
    raise ValueError(f"unknown enumeration mode {spec.mode!r}")


def check_budget(spec: EnumerationSpec, budget: int = DEFAULT_BUDGET) -> int:
    size = cardinality(spec)
    if size > budget:
        raise BudgetExceededError(size, budget)
    return size


def complete_edge_table(n: int) -> list[tuple[int, int]]:
    """Edges of K_n in the fixed enumeration order (by u, then v)."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def prufer_decode(seq: tuple[int, ...], n: int) -> Graph:
    """Tree for a vertex sequence of length n-2, by the smallest-leaf rule."""
    if len(seq) != n - 2:
        raise ValueError(f"sequence length must be n-2={n - 2}")
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"sequence entry {x} outside [0,{n})")
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] = 0
        degree[x] -= 1
    u, v = (v for v in range(n) if degree[v] == 1)
    edges.append((u, v))
    return make_graph(n, edges)


def unrank_combination(m: int, k: int, rank: int) -> tuple[int, ...]:
    """The lexicographically rank-th k-subset of range(m)."""
    if not 0 <= rank < math.comb(m, k):
        raise ValueError(f"rank {rank} outside [0, C({m},{k}))")
    out = []
    x = 0
    for slot in range(k, 0, -1):
        while True:
            block = math.comb(m - x - 1, slot - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def unrank_sequence(n: int, rank: int) -> tuple[int, ...]:
    """The rank-th length-(n-2) sequence over range(n), most significant first."""
    seq = []
    for j in range(n - 2):
        power = n ** (n - 3 - j)
        seq.append(rank // power % n)
    return tuple(seq)


def enumerate_space(
    spec: EnumerationSpec, budget: int = DEFAULT_BUDGET
) -> Iterator[Graph]:
    """Stream every member of the space exactly once (labeled objects)."""
    check_budget(spec, budget)
    n = spec.n
    if spec.mode == "labeled-trees":
        total = n ** (n - 2)
        for rank in range(total):
            yield prufer_decode(unrank_sequence(n, rank), n)
        return
    table = complete_edge_table(n)
    full = frozenset(table)
    if spec.mode == "deleted-edges":
        for subset in combinations(table, spec.count):
            yield make_graph(n, full - set(subset))
        return
    if spec.mode == "connected-with-edges":
        for subset in combinations(table, spec.count):
            g = make_graph(n, subset)
            if is_connected(g):
                yield g
        return
    raise ValueError(f"unknown enumeration mode {spec.mode!r}")


# ---------------------------------------------------------------------------
# Bulk kernels


def subset_blocks(
    m: int, k: int, start: int, stop: int, block: int
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (first rank, (B,k) index array) over lexicographic k-subsets."""
    it = islice(combinations(range(m), k), start, stop)
    rank = start
    while True:
        chunk = list(islice(it, block))
        if not chunk:
            return
        yield rank, np.asarray(chunk, dtype=np.int64)
        rank += len(chunk)


def batch_eigenvalues(n: int, subsets: np.ndarray, deleted: bool) -> np.ndarray:
    """Ascending Laplacian eigenvalues for each subset row.

    Rows select edges of K_n by index; ``deleted`` interprets the subset as
    removed from K_n rather than as the edge set itself.
    """
    table = complete_edge_table(n)
    eu = np.array([e[0] for e in table])
    ev = np.array([e[1] for e in table])
    B = subsets.shape[0]
    A = np.zeros((B, n, n))
    rows = np.arange(B)[:, None]
    A[rows, eu[subsets], ev[subsets]] = 1.0
    A[rows, ev[subsets], eu[subsets]] = 1.0
    if deleted:
        A = (1.0 - np.eye(n)) - A
    deg = A.sum(axis=2)
    L = -A
    diag = np.arange(n)
    L[:, diag, diag] = deg
    return np.linalg.eigvalsh(L)


def batch_kf(n: int, eigs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(connected mask, Kirchhoff index) per row; Kf is NaN when disconnected."""
    connected = eigs[:, 1] > _CONN_TOL
    with np.errstate(divide="ignore"):
        kf = n * np.sum(1.0 / np.maximum(eigs[:, 1:], 1e-300), axis=1)
    kf[~connected] = np.nan
    return connected, kf


def batch_cycle_length(n: int, subsets: np.ndarray) -> np.ndarray:
    """Vertices left after iterated leaf removal (the cycle, for unicyclic rows)."""
    table = complete_edge_table(n)
    eu = np.array([e[0] for e in table])
    ev = np.array([e[1] for e in table])
    B = subsets.shape[0]
    A = np.zeros((B, n, n), dtype=bool)
    rows = np.arange(B)[:, None]
    A[rows, eu[subsets], ev[subsets]] = True
    A[rows, ev[subsets], eu[subsets]] = True
    for _ in range(n):
        deg = A.sum(axis=2)
        leaves = deg == 1
        if not leaves.any():
            break
        keep = ~leaves
        A &= keep[:, :, None] & keep[:, None, :]
    return (A.sum(axis=2) > 0).sum(axis=1)


def wiener_block(n: int, start: int, stop: int) -> np.ndarray:
    """Exact Wiener index for the labeled trees with ranks [start, stop).

    Decodes all sequences at once, accumulating each pruned edge's
    component-size split a(n-a); this reproduces the per-tree BFS value.
    """
    B = stop - start
    codes = np.arange(start, stop, dtype=np.int64)
    seq = np.empty((B, max(n - 2, 1)), dtype=np.int64)
    for j in range(n - 2):
        seq[:, j] = codes // (n ** (n - 3 - j)) % n
    degree = np.ones((B, n), dtype=np.int16)
    if n > 2:
        flat = (seq[:, : n - 2] + n * np.arange(B, dtype=np.int64)[:, None]).ravel()
        degree += np.bincount(flat, minlength=B * n).reshape(B, n).astype(np.int16)
    size = np.ones((B, n), dtype=np.int16)
    W = np.zeros(B, dtype=np.int64)
    rows = np.arange(B)
    for k in range(n - 2):
        leaf = np.argmax(degree == 1, axis=1)
        parent = seq[:, k]
        s = size[rows, leaf].astype(np.int64)
        W += s * (n - s)
        degree[rows, leaf] = 0
        degree[rows, parent] -= 1
        size[rows, parent] += s.astype(np.int16)
    leaf = np.argmax(degree == 1, axis=1)
    s = size[rows, leaf].astype(np.int64)
    W += s * (n - s)
    return W


# ---------------------------------------------------------------------------
# Scan drivers (associative partial results; deterministic for any job count)


def _cluster_groups(sorted_vals: np.ndarray, tol: float) -> np.ndarray:
    """Group ids for values already sorted by preference order."""
    if sorted_vals.size == 0:
        return np.zeros(0, dtype=np.int64)
    scale = np.maximum(1.0, np.abs(sorted_vals[:-1]))
    new_group = np.abs(np.diff(sorted_vals)) > tol * scale
    return np.concatenate([[0], np.cumsum(new_group)])


def _pool_top_groups(
    vals: np.ndarray, ranks: np.ndarray, objective: str, top: int, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Keep every member of the first ``top`` value groups."""
    if vals.size == 0:
        return vals, ranks
    sign = -1.0 if objective == "max" else 1.0
    order = np.argsort(sign * vals, kind="stable")
    groups = _cluster_groups(vals[order], tol)
    keep = order[groups < top]
    return vals[keep], ranks[keep]


def _scan_subsets_worker(args) -> tuple:
    (n, k, deleted, objective, top, tol, start, stop, block) = args
    checked = 0
    connected_count = 0
    pool_vals: list[np.ndarray] = []
    pool_ranks: list[np.ndarray] = []
    m = n * (n - 1) // 2
    for rank0, subs in subset_blocks(m, k, start, stop, block):
        eigs = batch_eigenvalues(n, subs, deleted)
        connected, kf = batch_kf(n, eigs)
        checked += subs.shape[0]
        connected_count += int(connected.sum())
        idx = np.nonzero(connected)[0]
        v, r = _pool_top_groups(
            kf[idx], rank0 + idx.astype(np.int64), objective, top, tol
        )
        pool_vals.append(v)
        pool_ranks.append(r)
    vals = np.concatenate(pool_vals) if pool_vals else np.zeros(0)
    ranks = np.concatenate(pool_ranks) if pool_ranks else np.zeros(0, dtype=np.int64)
    return checked, connected_count, vals, ranks


def _scan_unicyclic_worker(args) -> tuple:
    (n, tol, start, stop, block) = args
    checked = 0
    connected_count = 0
    by_girth: dict[int, list] = {}
    m = n * (n - 1) // 2
    for rank0, subs in subset_blocks(m, n, start, stop, block):
        eigs = batch_eigenvalues(n, subs, deleted=False)
        connected, kf = batch_kf(n, eigs)
        checked += subs.shape[0]
        connected_count += int(connected.sum())
        idx = np.nonzero(connected)[0]
        if idx.size == 0:
            continue
        girth = batch_cycle_length(n, subs[idx])
        for g in np.unique(girth):
            sel = idx[girth == g]
            v, r = _pool_top_groups(
                kf[sel], rank0 + sel.astype(np.int64), "max", 1, tol
            )
            by_girth.setdefault(int(g), []).append((v, r))
    merged = {
        g: (np.concatenate([v for v, _ in parts]), np.concatenate([r for _, r in parts]))
        for g, parts in by_girth.items()
    }
    return checked, connected_count, merged


def _scan_trees_worker(args) -> tuple:
    (n, start, stop, block) = args
    max_w = n**3 // 6 + 2
    hist = np.zeros(max_w, dtype=np.int64)
    first_rank: dict[int, int] = {}
    for s in range(start, stop, block):
        e = min(s + block, stop)
        W = wiener_block(n, s, e)
        hist += np.bincount(W, minlength=max_w)
        for w in np.unique(W):
            w = int(w)
            if w not in first_rank:
                first_rank[w] = s + int(np.argmax(W == w))
    return hist, first_rank


def _run_partitioned(worker, arg_builder, total: int, jobs: int):
    """Apply ``worker`` over disjoint rank ranges, inline or in a fork pool."""
    jobs = max(1, min(jobs, total)) if total else 1
    if jobs == 1:
        return [worker(arg_builder(0, total))]
    bounds = [total * i // jobs for i in range(jobs + 1)]
    tasks = [arg_builder(bounds[i], bounds[i + 1]) for i in range(jobs)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        return pool.map(worker, tasks)


@dataclass
class SubsetScan:
    checked: int
    connected: int
    vals: np.ndarray
    ranks: np.ndarray


def scan_subsets(
    n: int,
    k: int,
    deleted: bool,
    objective: str,
    top: int,
    tol: float = 1e-7,
    jobs: int = 1,
    block: int = 1 << 15,
) -> SubsetScan:
    """Pooled members of the ``top`` best Kf value groups over a subset space."""
    total = math.comb(n * (n - 1) // 2, k)
    parts = _run_partitioned(
        _scan_subsets_worker,
        lambda a, b: (n, k, deleted, objective, top, tol, a, b, block),
        total,
        jobs,
    )
    checked = sum(p[0] for p in parts)
    connected = sum(p[1] for p in parts)
    vals = np.concatenate([p[2] for p in parts])
    ranks = np.concatenate([p[3] for p in parts])
    vals, ranks = _pool_top_groups(vals, ranks, objective, top, tol)
    return SubsetScan(checked, connected, vals, ranks)


def scan_unicyclic_by_girth(
    n: int, tol: float = 1e-7, jobs: int = 1, block: int = 1 << 15
) -> tuple[int, int, dict[int, tuple[np.ndarray, np.ndarray]]]:
    """Per-cycle-length maximal Kf groups over connected n-vertex n-edge graphs."""
    total = math.comb(n * (n - 1) // 2, n)
    parts = _run_partitioned(
        _scan_unicyclic_worker, lambda a, b: (n, tol, a, b, block), total, jobs
    )
    checked = sum(p[0] for p in parts)
    connected = sum(p[1] for p in parts)
    merged: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for _, _, part in parts:
        for g, (v, r) in part.items():
            if g in merged:
                merged[g] = (
                    np.concatenate([merged[g][0], v]),
                    np.concatenate([merged[g][1], r]),
                )
            else:
                merged[g] = (v, r)
    merged = {
        g: _pool_top_groups(v, r, "max", 1, tol) for g, (v, r) in merged.items()
    }
    return checked, connected, merged


@dataclass
class TreeScan:
    count: int
    hist: np.ndarray
    first_rank: dict[int, int]


def scan_labeled_trees(n: int, jobs: int = 1, block: int = 1 << 19) -> TreeScan:
    """Exact Wiener histogram over all labeled trees, with first-rank witnesses."""
    total = n ** (n - 2)
    parts = _run_partitioned(
        _scan_trees_worker, lambda a, b: (n, a, b, block), total, jobs
    )
    hist = sum(p[0] for p in parts)
    first_rank: dict[int, int] = {}
    for _, fr in parts:
        for w, rank in fr.items():
            if w not in first_rank or rank < first_rank[w]:
                first_rank[w] = rank
    return TreeScan(int(hist.sum()), hist, first_rank)

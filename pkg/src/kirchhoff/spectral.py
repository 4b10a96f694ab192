"""Laplacian spectra, resistance distances, Kirchhoff and Wiener indices.

Two independent routes to the Kirchhoff index are kept side by side: the
spectral form n * sum(1/mu_i) over the nonzero Laplacian eigenvalues, and
the pairwise sum of effective resistances from the Laplacian pseudoinverse.
Spanning trees are counted exactly over arbitrary-precision integers and
cross-checked against the floating spectral product whenever that product
is small enough to round reliably.

All functions are pure; results are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, connected_components, shortest_paths


class DisconnectedGraphError(ValueError):
    """Kirchhoff-index machinery is defined for connected graphs only."""

    def __init__(self, components: int):
        super().__init__(f"graph is disconnected ({components} components)")
        self.components = components


class NoEdgesError(ValueError):
    """Operation needs at least one edge."""


class ConvergenceFailureError(RuntimeError):
    """The symmetric eigensolver failed to converge (numeric pathology)."""


@dataclass(frozen=True)
class Spectrum:
    """Laplacian eigenvalues sorted non-increasing, with a zero threshold.

    Eigenvalues at or below ``zero_tol`` are classified as zero; their count
    equals the number of connected components.
    """

    values: tuple[float, ...]
    zero_tol: float

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def zero_multiplicity(self) -> int:
        return sum(1 for v in self.values if v <= self.zero_tol)

    @property
    def nonzero(self) -> tuple[float, ...]:
        return tuple(v for v in self.values if v > self.zero_tol)


@dataclass(frozen=True)
class ResistanceMatrix:
    """Symmetric matrix of pairwise effective resistances, zero diagonal."""

    n: int
    r: np.ndarray = field(repr=False)

    def pair_sum(self) -> float:
        return float(self.r.sum()) / 2.0


def laplacian_matrix(g: Graph) -> np.ndarray:
    """Dense Laplacian D - A as a float array."""
    L = np.zeros((g.n, g.n))
    for u, v in g.edges:
        L[u, v] -= 1.0
        L[v, u] -= 1.0
        L[u, u] += 1.0
        L[v, v] += 1.0
    return L


def zero_tolerance(g: Graph) -> float:
    """Zero-classification threshold, scaled by the maximum degree."""
    max_deg = max((b.bit_count() for b in g.adjacency_bits), default=0)
    return 1e-8 * max(1, max_deg)


def laplacian_spectrum(g: Graph) -> Spectrum:
    """Eigenvalues of D - A, sorted non-increasing."""
    if g.n < 1:
        raise ValueError("spectrum requires at least one vertex")
    try:
        w = np.linalg.eigvalsh(laplacian_matrix(g))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(str(exc)) from exc
    return Spectrum(tuple(float(x) for x in w[::-1]), zero_tolerance(g))


def _eigendecomposition(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(laplacian_matrix(g))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(str(exc)) from exc


def _require_connected(g: Graph) -> None:
    comps = connected_components(g)
    if comps != 1:
        raise DisconnectedGraphError(comps)


def kf_spectral(g: Graph) -> float:
    """Kirchhoff index as n * sum of reciprocal nonzero Laplacian eigenvalues."""
    if g.n < 2:
        raise ValueError("Kirchhoff index requires at least two vertices")
    spec = laplacian_spectrum(g)
    if spec.zero_multiplicity != 1:
        raise DisconnectedGraphError(spec.zero_multiplicity)
    return g.n * sum(1.0 / v for v in spec.values[:-1])


def resistance_matrix(g: Graph) -> ResistanceMatrix:
    """Effective resistances from the Laplacian pseudoinverse.

    The pseudoinverse is assembled from the eigendecomposition, inverting
    only eigenvalues above the zero threshold; r(i,j) = L+_ii + L+_jj - 2 L+_ij.
    """
    _require_connected(g)
    w, V = _eigendecomposition(g)
    tol = zero_tolerance(g)
    keep = w > tol
    Vk = V[:, keep]
    Lplus = (Vk / w[keep]) @ Vk.T
    d = np.diag(Lplus)
    r = d[:, None] + d[None, :] - 2.0 * Lplus
    np.fill_diagonal(r, 0.0)
    return ResistanceMatrix(g.n, r)


def kf_resistance(g: Graph) -> float:
    """Kirchhoff index as the sum of resistances over unordered pairs."""
    return resistance_matrix(g).pair_sum()


def kf_vertex(g: Graph, x: int) -> float:
    """Sum of resistances from vertex ``x`` to every other vertex."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} outside [0,{g.n})")
    return float(resistance_matrix(g).r[x].sum())


def wiener(g: Graph) -> int:
    """Sum of shortest-path distances over unordered pairs, exact integer."""
    total = 0
    for s in range(g.n):
        row = shortest_paths(g, s).dist
        for d in row:
            if d is None:
                raise DisconnectedGraphError(connected_components(g))
            total += d
    return total // 2


def _bareiss_determinant(mat: list[list[int]]) -> int:
    """Fraction-free elimination; exact determinant of an integer matrix."""
    a = [row[:] for row in mat]
    size = len(a)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


# The spectral product accumulates ~n*eps relative error, so exact rounding
# agreement can only be demanded while the absolute error stays below 1/2.
_CROSSCHECK_EXACT = 2**44
_CROSSCHECK_LIMIT = 2**50


def tree_count(g: Graph) -> int:
    """Number of spanning trees, exactly.

    Computed as the determinant of the reduced Laplacian (row/column 0
    removed) over arbitrary-precision integers; returns 0 for disconnected
    graphs.  The floating spectral product prod(mu_i)/n cross-checks the
    determinant: exact rounding agreement below 2**44, agreement within
    1e-9 relative up to 2**50, skipped beyond.
    """
    if g.n == 0:
        raise ValueError("spanning trees need at least one vertex")
    if g.n == 1:
        return 1
    minor = [[0] * (g.n - 1) for _ in range(g.n - 1)]
    for u, v in g.edges:
        minor_u = u - 1
        minor_v = v - 1
        if u > 0:
            minor[minor_u][minor_u] += 1
        if v > 0:
            minor[minor_v][minor_v] += 1
        if u > 0 and v > 0:
            minor[minor_u][minor_v] -= 1
            minor[minor_v][minor_u] -= 1
    count = _bareiss_determinant(minor)
    spec = laplacian_spectrum(g)
    product = float(np.prod(spec.values[:-1])) / g.n if g.m > 0 else (1.0 if g.n == 1 else 0.0)
    if spec.zero_multiplicity > 1:
        product = 0.0
    if product < _CROSSCHECK_EXACT:
        mismatch = round(product) != count
    elif product < _CROSSCHECK_LIMIT:
        mismatch = abs(product - count) > 1e-9 * max(1.0, float(count))
    else:
        mismatch = False
    if mismatch:
        raise ConvergenceFailureError(
            f"matrix-tree cross-check failed: determinant {count}, "
            f"spectral product {product!r}"
        )
    return count


def mu1_bounds(g: Graph) -> tuple[int, int]:
    """(max_degree + 1, max over edges of |N_u union N_v|) bracketing mu_1.

    The lower bound is tight for connected graphs exactly when some vertex
    is adjacent to all others; the upper bound never exceeds n.
    """
    if g.m == 0:
        raise NoEdgesError("mu_1 bounds need at least one edge")
    bits = g.adjacency_bits
    lower = max(b.bit_count() for b in bits) + 1
    upper = max((bits[u] | bits[v]).bit_count() for u, v in g.edges)
    return lower, upper

"""Pairwise dissimilarities and agglomerative hierarchical clustering.

The clusterer is the generic stepwise algorithm: start from singletons,
repeatedly merge the closest active pair, and update the remaining
dissimilarities with the Lance-Williams recurrence for the chosen method.
Ward runs on squared dissimilarities internally and reports square-rooted
heights, so merging two singletons at dissimilarity h records height h for
every method.  Ties on the minimum are broken toward the lexicographically
smallest (smaller id, larger id) pair of cluster ids, which makes the
output deterministic for any input.

``naive_linkage_oracle`` recomputes every inter-cluster dissimilarity from
the raw pairwise values at each step, straight from the method definitions.
It shares no update logic with :func:`linkage` on purpose: the two routes
must stay independent so one can check the other.
"""

from __future__ import annotations

import math

import numpy as np

from .dendrogram import CondensedMatrix, Dendrogram, validate_dendrogram
from .errors import ZeroVarianceRow

LINKAGE_METHODS = ("single", "complete", "average", "ward")
DISSIMILARITY_KINDS = ("euclidean", "correlation")


def _check_data(x) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D data matrix, got ndim={x.ndim}")
    n, p = x.shape
    if n < 2:
        raise ValueError(f"need at least 2 rows, got {n}")
    if p < 1:
        raise ValueError("need at least 1 column")
    if not np.all(np.isfinite(x)):
        raise ValueError("data matrix must be finite")
    return x


def euclidean_dissimilarity(x) -> CondensedMatrix:
    """Condensed Euclidean distances between the rows of ``x``."""
    x = _check_data(x)
    n = x.shape[0]
    out = np.empty(n * (n - 1) // 2)
    pos = 0
    for i in range(n - 1):
        diff = x[i + 1:] - x[i]
        out[pos:pos + n - 1 - i] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        pos += n - 1 - i
    return CondensedMatrix(n, out)


def correlation_dissimilarity(x) -> CondensedMatrix:
    """Condensed ``1 - r`` where r is the Pearson correlation of two rows.

    Values lie in [0, 2]: 0 for perfectly positively correlated rows, 2 for
    perfectly anticorrelated ones.  Round-off can push 1 - r a few ulps
    outside that range, so the result is clamped back onto it.  A constant
    row has no defined correlation and raises :class:`ZeroVarianceRow`.
    """
    x = _check_data(x)
    n, p = x.shape
    if p < 2:
        raise ValueError("row correlation needs at least 2 columns")
    constant = np.all(x == x[:, :1], axis=1)
    if constant.any():
        raise ZeroVarianceRow(int(np.flatnonzero(constant)[0]))
    centered = x - x.mean(axis=1, keepdims=True)
    norms = np.sqrt(np.einsum("ij,ij->i", centered, centered))
    unit = centered / norms[:, None]
    corr = unit @ unit.T
    iu, ju = np.triu_indices(n, 1)
    return CondensedMatrix(n, np.clip(1.0 - corr[iu, ju], 0.0, 2.0))


def _lw_combine(method: str, row_i, row_j, ni: int, nj: int,
                sizes, d_ij: float) -> np.ndarray:
    """New dissimilarity row for the cluster formed from slots i and j."""
    if method == "single":
        return np.minimum(row_i, row_j)
    if method == "complete":
        return np.maximum(row_i, row_j)
    if method == "average":
        return (ni * row_i + nj * row_j) / (ni + nj)
    # ward, on squared dissimilarities
    nk = sizes
    return ((ni + nk) * row_i + (nj + nk) * row_j - nk * d_ij) / (ni + nj + nk)


def linkage(d0: CondensedMatrix, method: str) -> Dendrogram:
    """Agglomerative clustering of ``d0`` under the given linkage method.

    Returns a validated :class:`Dendrogram` whose records list the smaller
    child id first.  Ward heights assume Euclidean input distances.
    """
    if method not in LINKAGE_METHODS:
        raise ValueError(f"unknown linkage method {method!r}")
    n = d0.n
    dm = d0.to_square()
    if method == "ward":
        dm *= dm
    np.fill_diagonal(dm, np.inf)

    # Active clusters live in slots 0..m-1; a merge frees one slot, which
    # is refilled by the last active slot so scans shrink as we go.
    node_of = np.arange(n, dtype=np.int64)
    sizes = np.ones(n, dtype=np.int64)
    merges = []
    m = n
    for step in range(n - 1):
        sub = dm[:m, :m]
        val = sub.min()
        ti, tj = np.nonzero(sub == val)
        ids_i = node_of[ti]
        ids_j = node_of[tj]
        lo = np.minimum(ids_i, ids_j)
        hi = np.maximum(ids_i, ids_j)
        # Rank pairs by (lo, hi); ids stay below 2n so this never overflows.
        pick = int(np.argmin(lo * np.int64(2 * n) + hi))
        best = (int(lo[pick]), int(hi[pick]))
        pi = int(ti[pick])
        pj = int(tj[pick])
        if pi > pj:
            pi, pj = pj, pi

        ni = int(sizes[pi])
        nj = int(sizes[pj])
        new_row = _lw_combine(method, dm[pi, :m], dm[pj, :m],
                              ni, nj, sizes[:m], val)
        new_row[pi] = np.inf
        dm[pi, :m] = new_row
        dm[:m, pi] = new_row

        last = m - 1
        if pj != last:
            dm[pj, :m] = dm[last, :m]
            dm[:m, pj] = dm[:m, last]
            dm[pj, pj] = np.inf
            node_of[pj] = node_of[last]
            sizes[pj] = sizes[last]
        m = last

        h = math.sqrt(val) if method == "ward" else float(val)
        merges.append((best[0], best[1], h, ni + nj))
        node_of[pi] = n + step
        sizes[pi] = ni + nj
    return validate_dendrogram(merges, n)


def _within_ss(sq_dist: np.ndarray, members: list[int]) -> float:
    """Total squared deviation from the centroid of ``members``, computed
    from squared pairwise distances alone."""
    if len(members) < 2:
        return 0.0
    block = sq_dist[np.ix_(members, members)]
    return float(block.sum()) / (2.0 * len(members))


def _naive_cost(method: str, dist, sq_dist, a: list[int], b: list[int]) -> float:
    cross = dist[np.ix_(a, b)]
    if method == "single":
        return float(cross.min())
    if method == "complete":
        return float(cross.max())
    if method == "average":
        return float(cross.mean())
    gain = (_within_ss(sq_dist, a + b)
            - _within_ss(sq_dist, a) - _within_ss(sq_dist, b))
    return math.sqrt(max(0.0, 2.0 * gain))


def naive_linkage_oracle(d0: CondensedMatrix, method: str) -> Dendrogram:
    """Reference clusterer: recompute every inter-cluster dissimilarity
    from raw pairs at each step.  Same tie-break as :func:`linkage`.

    Quadratic per pair and cubic overall, so it is capped at 64 items.
    """
    if method not in LINKAGE_METHODS:
        raise ValueError(f"unknown linkage method {method!r}")
    n = d0.n
    if n > 64:
        raise ValueError(f"oracle is limited to 64 items, got {n}")
    dist = d0.to_square()
    sq_dist = dist * dist
    clusters: list[tuple[int, list[int]]] = [(i, [i]) for i in range(n)]
    merges = []
    for step in range(n - 1):
        best_cost = None
        best_key = None
        best_at = None
        for ia in range(len(clusters)):
            id_a, members_a = clusters[ia]
            for ib in range(ia + 1, len(clusters)):
                id_b, members_b = clusters[ib]
                cost = _naive_cost(method, dist, sq_dist, members_a, members_b)
                key = (id_a, id_b) if id_a < id_b else (id_b, id_a)
                if (best_cost is None or cost < best_cost
                        or (cost == best_cost and key < best_key)):
                    best_cost, best_key, best_at = cost, key, (ia, ib)
        ia, ib = best_at
        merged = clusters[ia][1] + clusters[ib][1]
        del clusters[ib]
        del clusters[ia]
        clusters.append((n + step, merged))
        merges.append((best_key[0], best_key[1], best_cost, len(merged)))
    return validate_dendrogram(merges, n)

"""Shared test utilities: dendrogram generators and brute-force oracles.

The oracles here deliberately use a different algorithm than the package
(parent-pointer walks instead of leaf-set accumulation), so agreement is
meaningful.
"""

import numpy as np

from branchembed import Dendrogram, validate_dendrogram


def random_dendrogram(n, rng, max_step=1.0):
    """A random valid monotonic dendrogram over n leaves.

    Merges pick two uniformly random active clusters; each merge height
    exceeds both children's heights by a positive step, so all internal
    heights are strictly increasing along branches.
    """
    active = [(i, 0.0) for i in range(n)]
    node_size = {i: 1 for i in range(n)}
    records = []
    for k in range(n - 1):
        ia, ib = rng.choice(len(active), size=2, replace=False)
        (id_a, h_a) = active[min(ia, ib)]
        (id_b, h_b) = active[max(ia, ib)]
        h = max(h_a, h_b) + rng.uniform(0.01, max_step)
        size = node_size[id_a] + node_size[id_b]
        left, right = (id_a, id_b) if rng.random() < 0.5 else (id_b, id_a)
        records.append((left, right, h, size))
        for idx in sorted((ia, ib), reverse=True):
            del active[idx]
        node_size[n + k] = size
        active.append((n + k, h))
    return validate_dendrogram(records, n)


def balanced_dendrogram(n):
    """A near-balanced dendrogram: repeated pairwise merges of adjacent
    clusters, heights growing by one per round."""
    active = list(range(n))
    node_size = {i: 1 for i in range(n)}
    records = []
    nxt = n
    h = 0.0
    while len(active) > 1:
        h += 1.0
        merged = []
        for i in range(0, len(active) - 1, 2):
            a, b = active[i], active[i + 1]
            size = node_size[a] + node_size[b]
            records.append((a, b, h, size))
            node_size[nxt] = size
            merged.append(nxt)
            nxt += 1
        if len(active) % 2:
            merged.append(active[-1])
        active = merged
    return validate_dendrogram(records, n)


def parents_and_heights(d: Dendrogram):
    """Parent pointer and merge height per node (root's parent is -1)."""
    parent = np.full(d.n_nodes, -1, dtype=np.int64)
    node_height = np.zeros(d.n_nodes)
    for k in range(d.n_leaves - 1):
        parent[d.left[k]] = parent[d.right[k]] = d.n_leaves + k
        node_height[d.n_leaves + k] = d.height[k]
    return parent, node_height


def brute_lca(parent, i, j):
    seen = set()
    node = i
    while node != -1:
        seen.add(node)
        node = parent[node]
    node = j
    while node not in seen:
        node = parent[node]
    return node


def brute_depths(parent, n_nodes):
    depth = np.zeros(n_nodes, dtype=np.int64)
    for node in range(n_nodes):
        at = node
        while parent[at] != -1:
            depth[node] += 1
            at = parent[at]
    return depth


def brute_cophenetic(d: Dendrogram):
    """Upper-triangle cophenetic values via explicit LCA walks."""
    parent, node_height = parents_and_heights(d)
    n = d.n_leaves
    out = np.empty(n * (n - 1) // 2)
    pos = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            out[pos] = node_height[brute_lca(parent, i, j)]
            pos += 1
    return out


def brute_kinship(d: Dendrogram):
    """Upper-triangle leaf-to-leaf path edge counts via explicit walks."""
    parent, _ = parents_and_heights(d)
    depth = brute_depths(parent, d.n_nodes)
    n = d.n_leaves
    out = np.empty(n * (n - 1) // 2)
    pos = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            lca = brute_lca(parent, i, j)
            out[pos] = depth[i] + depth[j] - 2 * depth[lca]
            pos += 1
    return out

"""Compiled loop for the contractible-state histogram.

A state contributes to the contractible part exactly when every circle bounds
a disk.  Then every circle separates, so the graph with the regions of the
surface minus the circles as vertices and the circles as edges is a tree, and
each circle has a side of Euler characteristic one.  Both conditions are
checked per state on flat integer arrays.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def zero_histogram(c, nf, chi, genus, alpha, partner, sides, strips, lo, hi):
    """Counts of contractible-only states in ``[lo, hi)`` by (#A, #circles).

    ``partner[r, h]``, ``sides[r, h, :]`` and ``strips[r, x, :]`` are indexed
    by the resolution ``r`` (0 for B, 1 for A) of the crossing of ``h``/``x``.
    """
    n = 4 * c
    hist = np.zeros((c + 1, 2 * c + 2), dtype=np.int64)
    res = np.zeros(c, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    ends = np.zeros((2 * c + 1, 2), dtype=np.int64)
    parent = np.zeros(nf, dtype=np.int64)
    index = np.zeros(nf, dtype=np.int64)
    rchi = np.zeros(nf, dtype=np.int64)
    deg = np.zeros(nf + 1, dtype=np.int64)
    fill = np.zeros(nf + 1, dtype=np.int64)
    adj = np.zeros(4 * c + 2, dtype=np.int64)
    order = np.zeros(nf, dtype=np.int64)
    up = np.zeros(nf, dtype=np.int64)
    visited = np.zeros(nf, dtype=np.bool_)
    for bits in range(lo, hi):
        a = 0
        for x in range(c):
            r = (bits >> x) & 1
            res[x] = r
            a += r
        for h in range(n):
            seen[h] = False
        m = 0
        for start in range(n):
            if seen[start]:
                continue
            r = res[start >> 2]
            ends[m, 0] = sides[r, start, 0]
            ends[m, 1] = sides[r, start, 1]
            m += 1
            h = start
            while not seen[h]:
                k = partner[res[h >> 2], h]
                seen[h] = True
                seen[k] = True
                h = alpha[k]
        if genus == 0:
            hist[a, m] += 1
            continue
        for f in range(nf):
            parent[f] = f
        for x in range(c):
            u = strips[res[x], x, 0]
            v = strips[res[x], x, 1]
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                parent[u] = v
        nreg = 0
        for f in range(nf):
            index[f] = -1
        for f in range(nf):
            u = f
            while parent[u] != u:
                u = parent[u]
            if index[u] < 0:
                index[u] = nreg
                rchi[nreg] = 0
                nreg += 1
            index[f] = index[u]
            rchi[index[f]] += 1
        if nreg != m + 1:
            continue
        for x in range(c):
            rchi[index[strips[res[x], x, 0]]] -= 1
        # adjacency of the region tree
        for i in range(nreg + 1):
            deg[i] = 0
        for j in range(m):
            deg[index[ends[j, 0]] + 1] += 1
            deg[index[ends[j, 1]] + 1] += 1
        for i in range(nreg):
            deg[i + 1] += deg[i]
        for i in range(nreg + 1):
            fill[i] = deg[i]
        for j in range(m):
            p = index[ends[j, 0]]
            q = index[ends[j, 1]]
            adj[fill[p]] = q
            fill[p] += 1
            adj[fill[q]] = p
            fill[q] += 1
        for i in range(nreg):
            visited[i] = False
        order[0] = 0
        up[0] = -1
        visited[0] = True
        head = 0
        tail = 1
        while head < tail:
            u = order[head]
            head += 1
            for e in range(deg[u], deg[u + 1]):
                w = adj[e]
                if not visited[w]:
                    visited[w] = True
                    up[w] = u
                    order[tail] = w
                    tail += 1
        if tail != nreg:
            continue
        ok = True
        for i in range(nreg - 1, 0, -1):
            u = order[i]
            if rchi[u] != 1 and chi - rchi[u] != 1:
                ok = False
                break
            rchi[up[u]] += rchi[u]
        if ok:
            hist[a, m] += 1
    return hist

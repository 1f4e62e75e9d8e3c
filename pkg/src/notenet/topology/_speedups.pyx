# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled measurement kernels.

Same contracts as notenet.topology._reference: graphs arrive as CSR
adjacency (n, indptr, indices) with int32 arrays.
"""

import numpy as np


def distance_sum(int n, int[::1] indptr, int[::1] indices):
    """Sum of BFS distances over ordered pairs of distinct reachable nodes."""
    if n <= 1:
        return 0
    dist_arr = np.empty(n, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
    cdef long long total = 0
    cdef int s, u, v, i, head, tail
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for i in range(indptr[u], indptr[u + 1]):
                v = indices[i]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    total += dist[v]
                    queue[tail] = v
                    tail += 1
    return int(total)


def betweenness(int n, int[::1] indptr, int[::1] indices):
    """Raw shortest-path betweenness per node (Brandes).

    Endpoints excluded; each unordered pair counted once; no normalization.
    """
    bc_arr = np.zeros(n, dtype=np.float64)
    if n < 3:
        return bc_arr
    cdef double[::1] bc = bc_arr
    dist_arr = np.empty(n, dtype=np.int32)
    order_arr = np.empty(n, dtype=np.int32)
    sigma_arr = np.empty(n, dtype=np.float64)
    delta_arr = np.empty(n, dtype=np.float64)
    cdef int[::1] dist = dist_arr
    cdef int[::1] order = order_arr
    cdef double[::1] sigma = sigma_arr
    cdef double[::1] delta = delta_arr
    cdef int s, u, v, w, i, head, tail, idx
    cdef double coeff
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = order[head]
            head += 1
            for i in range(indptr[u], indptr[u + 1]):
                v = indices[i]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    order[tail] = v
                    tail += 1
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            for i in range(indptr[w], indptr[w + 1]):
                v = indices[i]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    for i in range(n):
        bc[i] /= 2.0
    return bc_arr


def triangle_triple_counts(int n, int[::1] indptr, int[::1] indices):
    """(number of triangles, number of connected triples)."""
    flag_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] flag = flag_arr
    cdef long long triangles = 0, triples = 0
    cdef long long deg
    cdef int u, v, w, i, j
    for u in range(n):
        deg = indptr[u + 1] - indptr[u]
        triples += deg * (deg - 1) // 2
        for i in range(indptr[u], indptr[u + 1]):
            flag[indices[i]] = 1
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            if v > u:
                for j in range(indptr[v], indptr[v + 1]):
                    w = indices[j]
                    if w > v and flag[w]:
                        triangles += 1
        for i in range(indptr[u], indptr[u + 1]):
            flag[indices[i]] = 0
    return int(triangles), int(triples)


cdef void _esu_extend(int sub_size, int level, int el, int root,
                      int[::1] indptr, int[::1] indices,
                      int[:, ::1] ext, unsigned char[::1] vis,
                      long long* counts) noexcept:
    # ext[level, 0..el) is the live extension set for the current subset.
    cdef int w, u, i, el_child, n_added
    while el > 0:
        el -= 1
        w = ext[level, el]
        if sub_size + 1 == 4:
            counts[1] += 1
            continue
        if sub_size + 1 == 3:
            counts[0] += 1
        el_child = 0
        for i in range(el):
            ext[level + 1, el_child] = ext[level, i]
            el_child += 1
        n_added = 0
        for i in range(indptr[w], indptr[w + 1]):
            u = indices[i]
            if u > root and vis[u] == 0:
                vis[u] = 1
                ext[level + 1, el_child] = u
                el_child += 1
                n_added += 1
        _esu_extend(sub_size + 1, level + 1, el_child, root,
                    indptr, indices, ext, vis, counts)
        for i in range(el_child - n_added, el_child):
            vis[ext[level + 1, i]] = 0


def connected_subgraph_counts(int n, int[::1] indptr, int[::1] indices):
    """Counts of connected induced subgraphs on 3 and on 4 nodes (ESU)."""
    if n < 3:
        return 0, 0
    vis_arr = np.zeros(n, dtype=np.uint8)
    ext_arr = np.empty((4, n), dtype=np.int32)
    cdef unsigned char[::1] vis = vis_arr
    cdef int[:, ::1] ext = ext_arr
    cdef long long counts[2]
    counts[0] = 0
    counts[1] = 0
    cdef int root, u, i, el
    for root in range(n):
        vis[root] = 1
        el = 0
        for i in range(indptr[root], indptr[root + 1]):
            u = indices[i]
            if u > root:
                ext[0, el] = u
                el += 1
                vis[u] = 1
        _esu_extend(1, 0, el, root, indptr, indices, ext, vis, counts)
        for i in range(el):
            vis[ext[0, i]] = 0
        vis[root] = 0
    return int(counts[0]), int(counts[1])

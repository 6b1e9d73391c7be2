"""Sequential O(n) array kernels, jitted with numba.

Everything here operates on plain integer ndarrays so the functions
also run untouched under NUMBA_DISABLE_JIT=1 for debugging.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def decode_two_type(inc):
    """Rebuild the two-type tree whose walk has the given increments.

    ``inc`` holds n+1 increments (each -1 or >= 0).  Returns
    ``(status, ccount, parent, depth)`` with vertices in depth-first
    order; status 0 means success, nonzero means the increments do not
    form a decodable first-passage excursion.

    Increment j >= 0: attach a black vertex with j white children under
    the current white vertex, descend to the first new white child if
    j >= 1.  Increment -1: the current white vertex is complete; move
    to its next unvisited sibling if any, else to the white
    grandparent.  The final -1 completes the root.
    """
    m = inc.shape[0]
    V = m
    ccount = np.zeros(V, np.int32)
    parent = np.full(V, -1, np.int32)
    depth = np.zeros(V, np.int32)
    stack_b = np.empty(V, np.int32)
    stack_r = np.empty(V, np.int32)
    top = -1
    nxt = 1
    cur = 0
    for i in range(m):
        x = inc[i]
        if x >= 0:
            if cur < 0 or nxt >= V:
                return 1, ccount, parent, depth
            b = nxt
            nxt += 1
            parent[b] = cur
            depth[b] = depth[cur] + 1
            ccount[b] = x
            ccount[cur] += 1
            if x > 0:
                if nxt >= V:
                    return 1, ccount, parent, depth
                w = nxt
                nxt += 1
                parent[w] = b
                depth[w] = depth[b] + 1
                top += 1
                stack_b[top] = b
                stack_r[top] = x - 1
                cur = w
        elif x == -1:
            if cur < 0:
                return 2, ccount, parent, depth
            if top >= 0 and stack_r[top] > 0:
                b = stack_b[top]
                stack_r[top] -= 1
                if nxt >= V:
                    return 1, ccount, parent, depth
                w = nxt
                nxt += 1
                parent[w] = b
                depth[w] = depth[b] + 1
                cur = w
            elif top >= 0:
                b = stack_b[top]
                top -= 1
                cur = parent[b]
            else:
                if i != m - 1:
                    return 3, ccount, parent, depth
                cur = -1
        else:
            return 4, ccount, parent, depth
    if cur != -1 or nxt != V or top != -1:
        return 5, ccount, parent, depth
    return 0, ccount, parent, depth


@njit(cache=True)
def tree_arrays_from_counts(ccount):
    """Parent and depth arrays from depth-first child counts."""
    V = ccount.shape[0]
    parent = np.full(V, -1, np.int32)
    depth = np.zeros(V, np.int32)
    sv = np.empty(V, np.int32)
    sr = np.empty(V, np.int32)
    top = -1
    if ccount[0] > 0:
        top = 0
        sv[0] = 0
        sr[0] = ccount[0]
    for v in range(1, V):
        b = sv[top]
        parent[v] = b
        depth[v] = depth[b] + 1
        sr[top] -= 1
        if ccount[v] > 0:
            top += 1
            sv[top] = v
            sr[top] = ccount[v]
        else:
            while top >= 0 and sr[top] == 0:
                top -= 1
    return parent, depth


@njit(cache=True)
def subtree_sizes(parent):
    """Vertex count of each subtree (vertices in depth-first order)."""
    V = parent.shape[0]
    size = np.ones(V, np.int64)
    for v in range(V - 1, 0, -1):
        size[parent[v]] += size[v]
    return size


@njit(cache=True)
def contour_seq(ccount, parent, size):
    """Contour vertex sequence u_0..u_{2n} (indices into depth-first order)."""
    V = ccount.shape[0]
    n = V - 1
    seq = np.empty(2 * n + 1, np.int32)
    cursor = np.empty(V, np.int64)
    done = np.zeros(V, np.int32)
    for v in range(V):
        cursor[v] = v + 1
    pos = 0
    v = 0
    seq[0] = 0
    while True:
        if done[v] < ccount[v]:
            c = cursor[v]
            cursor[v] = c + size[c]
            done[v] += 1
            v = int(c)
        else:
            if v == 0:
                break
            v = parent[v]
        pos += 1
        seq[pos] = v
    return seq


@njit(cache=True)
def record_counts(values):
    """counts[k] = #{ j < k : values[j] < min(values[j+1..k]) }.

    Maintains the stack of surviving indices; amortized O(1) per step.
    """
    L = values.shape[0]
    counts = np.empty(L, np.int32)
    stack = np.empty(L, np.int64)
    top = -1
    counts[0] = 0
    for k in range(1, L):
        vk = values[k]
        while top >= 0 and stack[top] >= vk:
            top -= 1
        if values[k - 1] < vk:
            top += 1
            stack[top] = values[k - 1]
        counts[k] = top + 1
    return counts


@njit(cache=True)
def orbit_reps(perm):
    """Minimal element of each permutation orbit, per element."""
    N = perm.shape[0]
    rep = np.full(N, -1, np.int64)
    for i in range(N):
        if rep[i] >= 0:
            continue
        j = i
        while True:
            rep[j] = i
            j = perm[j]
            if j == i:
                break
    return rep


@njit(cache=True)
def bfs_csr(indptr, indices, source, nvert):
    """Exact BFS distances over a CSR adjacency; -1 marks unreachable."""
    dist = np.full(nvert, -1, np.int32)
    queue = np.empty(nvert, np.int64)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        d = dist[v] + 1
        for t in range(indptr[v], indptr[v + 1]):
            w = indices[t]
            if dist[w] < 0:
                dist[w] = d
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True)
def source_links(sigma, is_source):
    """Cyclic next-source links along vertex rotations and along faces.

    A half-edge is a source when it points down the distance gradient;
    the sector just after source g in the rotation is the erased tree
    edge of the corner at g, and it borders the face of alpha(g).
    Returns (next_in_rotation, next_in_face), both -1 on non-sources;
    next_in_face links the sources whose tree edges border one face, in
    face-orbit order (faces are orbits of h -> sigma[h XOR 1]).
    """
    H = sigma.shape[0]
    next_rot = np.full(H, -1, np.int64)
    next_face = np.full(H, -1, np.int64)
    seen = np.zeros(H, np.uint8)
    buf = np.empty(H, np.int64)
    # rotations
    for start in range(H):
        if seen[start]:
            continue
        cnt = 0
        h = start
        while True:
            seen[h] = 1
            if is_source[h]:
                buf[cnt] = h
                cnt += 1
            h = sigma[h]
            if h == start:
                break
        for t in range(cnt):
            next_rot[buf[t]] = buf[(t + 1) % cnt]
    # faces: a source g belongs to the face walk through alpha(g); the
    # contour order of a black vertex's tree edges runs against the
    # face-orbit direction, hence the reversed linkage
    seen[:] = 0
    for start in range(H):
        if seen[start]:
            continue
        cnt = 0
        h = start
        while True:
            seen[h] = 1
            if is_source[h ^ 1]:
                buf[cnt] = h ^ 1
                cnt += 1
            h = sigma[h ^ 1]
            if h == start:
                break
        for t in range(cnt):
            next_face[buf[t]] = buf[t - 1] if t > 0 else buf[cnt - 1]
    return next_rot, next_face


@njit(cache=True)
def reconstruct_mobile(next_rot, next_face, dist_h, h_root, n):
    """Depth-first rebuild of the tree and labels behind a pointed map.

    ``h_root`` is the source end of the root edge at the tree's root
    vertex.  At a white vertex the corners are its source ends in
    rotation order; the tree edge after a corner is the sector right
    after its source, bordering the face of the paired half-edge.  The
    root starts at its own entry corner and descends every edge; any
    other white starts one corner later and stops at the entry edge
    (its parent).  Emits child counts in depth-first order, labels per
    white vertex, and the map edge drawn at each white-contour corner.
    Status nonzero means the map is not in the image of the
    construction.
    """
    V = n + 1
    ccount = np.full(V, -1, np.int32)
    labels = np.empty(V, np.int64)
    corner_edge = np.full(n, -1, np.int64)
    d0 = dist_h[h_root]

    # frame: kind 0 = white, 1 = black
    kind = np.empty(V + 2, np.int8)
    entry = np.empty(V + 2, np.int64)
    cur = np.empty(V + 2, np.int64)  # last processed source / face edge
    started = np.zeros(V + 2, np.int8)

    lex = 0
    white_ct = 0
    corner_ct = 0

    kind[0] = 0
    entry[0] = h_root
    cur[0] = -1
    started[0] = 0
    top = 0
    cnt = 1
    g = next_rot[h_root]
    while g != h_root:
        if g < 0 or cnt > n + 1:
            return 1, ccount, labels, corner_edge
        cnt += 1
        g = next_rot[g]
    ccount[0] = cnt  # root: every incident tree edge is a child
    labels[0] = 0
    lex = 1
    white_ct = 1

    while top >= 0:
        if kind[top] == 0:
            is_root = top == 0
            if started[top] == 0:
                g = entry[top] if is_root else next_rot[entry[top]]
                started[top] = 1
            else:
                g = next_rot[cur[top]]
                if is_root and g == entry[top]:
                    top -= 1  # all of the root's edges processed
                    continue
            if g < 0 or corner_ct >= n:
                return 2, ccount, labels, corner_edge
            corner_edge[corner_ct] = g >> 1
            corner_ct += 1
            cur[top] = g
            if not is_root and g == entry[top]:
                top -= 1  # the edge after the last corner is the parent
                continue
            # descend into the black across the tree edge after corner g
            if lex >= V or top + 1 >= kind.shape[0]:
                return 3, ccount, labels, corner_edge
            b_slot = lex
            lex += 1
            cnt = 0
            e = next_face[g]
            while e != g:
                if e < 0 or cnt > n:
                    return 4, ccount, labels, corner_edge
                cnt += 1
                e = next_face[e]
            ccount[b_slot] = cnt  # children of the black vertex
            top += 1
            kind[top] = 1
            entry[top] = g
            cur[top] = g
            started[top] = 1
        else:
            e = next_face[cur[top]]
            if e < 0:
                return 4, ccount, labels, corner_edge
            if e == entry[top]:
                top -= 1
                continue
            cur[top] = e
            # descend into the white whose entry source is e
            if lex >= V:
                return 5, ccount, labels, corner_edge
            w_slot = lex
            lex += 1
            cnt = 1
            g = next_rot[e]
            while g != e:
                if g < 0 or cnt > n:
                    return 6, ccount, labels, corner_edge
                cnt += 1
                g = next_rot[g]
            ccount[w_slot] = cnt - 1  # one incident edge is the parent
            labels[white_ct] = dist_h[e] - d0
            white_ct += 1
            top += 1
            kind[top] = 0
            entry[top] = e
            cur[top] = -1
            started[top] = 0

    if lex != V or corner_ct != n:
        return 7, ccount, labels, corner_edge
    return 0, ccount, labels[:white_ct], corner_edge


@njit(cache=True)
def chain_accumulate(prev, inc):
    """out[i] = out[prev[i]] + inc[i] with prev[i] < i (roots: prev = -1)."""
    L = prev.shape[0]
    out = np.empty(L, np.int64)
    for i in range(L):
        p = prev[i]
        if p < 0:
            out[i] = inc[i]
        else:
            out[i] = out[p] + inc[i]
    return out

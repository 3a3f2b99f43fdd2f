"""numba kernels for the hot loops.

All kernels work on CSR adjacency ``(ptr, nbr, eid)`` plus the weights laid
out in the same CSR order (``wk[k]`` belongs to slot ``k``, so the scan of a
vertex's edges reads memory sequentially), and a uint8 vertex mask.  Heaps hold
``(distance, vertex)`` tuples so ties always break by vertex id.

Workspace arrays (``dist``/``done``/``par``) are owned by the caller,
must arrive in their reset state (INF / 0 / -1) and are restored before the
kernel returns, so repeated small searches never pay O(n) set-up.
"""

import heapq

import numpy as np
from numba import njit

INF = np.int64(1 << 62)

# grower status codes
RUNNING, STOPPED, OVERWEIGHT, GUARD, NEGATIVE = 0, 1, 2, 3, 4


def new_workspace(n):
    return (np.full(n, INF, dtype=np.int64), np.zeros(n, dtype=np.uint8),
            np.full(n, -1, dtype=np.int64))


@njit(cache=True)
def dijkstra_kernel(ptr, nbr, eid, wk, mask, srcs, labels, cap, target, dist, done, par):
    """Multi-source Dijkstra with initial labels and a radius cap.

    Returns ``(order, dists, parents, status)`` over the settled vertices in
    settle order; status 1 means a negative visible edge was met.
    """
    heap = [(np.int64(0), np.int64(0))]
    heap.pop()
    touched = [np.int64(0)]
    touched.pop()
    for k in range(srcs.shape[0]):
        s = srcs[k]
        lab = labels[k]
        if mask[s] == 0 or lab > cap:
            continue
        if lab < dist[s]:
            if dist[s] == INF:
                touched.append(s)
            dist[s] = lab
            par[s] = -1
            heapq.heappush(heap, (lab, s))
    order = [np.int64(0)]
    order.pop()
    status = 0
    while len(heap) > 0:
        d, v = heapq.heappop(heap)
        if done[v] == 1 or d > dist[v]:
            continue
        done[v] = 1
        order.append(v)
        if v == target:
            break
        for k in range(ptr[v], ptr[v + 1]):
            u = np.int64(nbr[k])
            if mask[u] == 0:
                continue
            wt = wk[k]
            if wt < 0:
                status = 1
                break
            if done[u] == 1:
                continue
            nd = d + wt
            if nd > cap:
                continue
            if nd < dist[u]:
                if dist[u] == INF:
                    touched.append(u)
                dist[u] = nd
                par[u] = eid[k]
                heapq.heappush(heap, (nd, u))
        if status:
            break
    cnt = len(order)
    ov = np.empty(cnt, dtype=np.int64)
    od = np.empty(cnt, dtype=np.int64)
    op = np.empty(cnt, dtype=np.int64)
    for i in range(cnt):
        v = order[i]
        ov[i] = v
        od[i] = dist[v]
        op[i] = par[v]
    for v in touched:
        dist[v] = INF
        done[v] = 0
        par[v] = -1
    return ov, od, op, status


@njit(cache=True)
def _first_at_least(cum, x):
    lo = 0
    hi = len(cum) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if cum[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _grow_step(ptr, nbr, wk, deg, mask, T, K, num, den, budget,
               heap, dist, done, touched, settled, cum, volat, st):
    # st = [next threshold index i, settled volume, status, exhausted, work]
    while True:
        while len(heap) > 0:
            d0 = heap[0][0]
            v0 = heap[0][1]
            if done[v0] == 1 or d0 > dist[v0]:
                heapq.heappop(heap)
            else:
                break
        top = heap[0][0] if len(heap) > 0 else INF
        i = st[0]
        if top <= T[i]:
            break
        # every vertex within T[i] is settled: evaluate increment i
        vol = st[1]
        volat[i] = vol
        if i > 0:
            # vol_i <= (1+C eps) vol_{i-1}  <=>  vol(B(T[i-1])) >= ceil(vol_i / (1+C eps));
            # cum[j] is the settled volume after the j-th settle
            idx = (vol * den + num - 1) // num
            if idx == 0 or dist[settled[_first_at_least(cum, idx)]] <= T[i - 1]:
                st[2] = STOPPED
                st[3] = 1 if len(heap) == 0 else 0
                return STOPPED
        if vol > budget[0]:
            st[2] = OVERWEIGHT
            return OVERWEIGHT
        if i == K:
            st[2] = GUARD
            return GUARD
        st[0] = i + 1
    d0, v = heapq.heappop(heap)
    done[v] = 1
    settled.append(v)
    st[1] += deg[v]
    cum.append(st[1])
    work = 1
    for k in range(ptr[v], ptr[v + 1]):
        u = np.int64(nbr[k])
        work += 1
        if mask[u] == 0:
            continue
        wt = wk[k]
        if wt < 0:
            st[2] = NEGATIVE
            return NEGATIVE
        if done[u] == 1:
            continue
        nd = d0 + wt
        if nd < dist[u]:
            if dist[u] == INF:
                touched.append(u)
            dist[u] = nd
            heapq.heappush(heap, (nd, u))
    st[4] += work
    return RUNNING


@njit(cache=True)
def _grow_collect(settled, dist, done, touched):
    cnt = len(settled)
    verts = np.empty(cnt, dtype=np.int64)
    dists = np.empty(cnt, dtype=np.int64)
    for i in range(cnt):
        verts[i] = settled[i]
        dists[i] = dist[settled[i]]
    for v in touched:
        dist[v] = INF
        done[v] = 0
    return verts, dists


@njit(cache=True)
def grow_kernel(ptr, nbr, wk, deg, mask, s, T, K, num, den, budget, dist, done):
    """Grow one ball from ``s``; see :func:`detsssp.ballgrow.grow_ball`."""
    heap = [(np.int64(0), np.int64(0))]
    heap.pop()
    touched = [np.int64(s)]
    settled = [np.int64(0)]
    settled.pop()
    cum = [np.int64(0)]
    cum.pop()
    dist[s] = 0
    heapq.heappush(heap, (np.int64(0), np.int64(s)))
    volat = np.zeros(K + 1, dtype=np.int64)
    st = np.zeros(5, dtype=np.int64)
    b = np.array([budget], dtype=np.int64)
    r = RUNNING
    while r == RUNNING:
        r = _grow_step(ptr, nbr, wk, deg, mask, T, K, num, den, b,
                       heap, dist, done, touched, settled, cum, volat, st)
    verts, dists = _grow_collect(settled, dist, done, touched)
    return r, st, volat, verts, dists


@njit(cache=True)
def _race_core(fptr, fnbr, fw, rptr, rnbr, rw, deg, mask_p, mask_m, T, K, num, den,
               b_p, b_m, heap_p, heap_m, dist_p, done_p, dist_m, done_m, touched_p, touched_m,
               settled_p, settled_m, cum_p, cum_m, volat_p, volat_m, st_p, st_m):
    # one settle step per side alternately until one side finishes
    rp = RUNNING
    rm = RUNNING
    while rp == RUNNING and rm == RUNNING:
        rp = _grow_step(fptr, fnbr, fw, deg, mask_p, T, K, num, den, b_p,
                        heap_p, dist_p, done_p, touched_p, settled_p, cum_p, volat_p, st_p)
        if rp != RUNNING:
            break
        rm = _grow_step(rptr, rnbr, rw, deg, mask_m, T, K, num, den, b_m,
                        heap_m, dist_m, done_m, touched_m, settled_m, cum_m, volat_m, st_m)
    # the survivor continues only while its ball can still be strictly smaller
    choice = -2
    if rp != RUNNING:
        if rp == STOPPED:
            b_m[0] = min(b_m[0], volat_p[st_p[0] - 1] - 1)
        if rp == STOPPED or rp == OVERWEIGHT:
            while rm == RUNNING:
                rm = _grow_step(rptr, rnbr, rw, deg, mask_m, T, K, num, den, b_m,
                                heap_m, dist_m, done_m, touched_m, settled_m, cum_m,
                                volat_m, st_m)
            if rm == STOPPED:
                choice = 1
            elif rm == OVERWEIGHT:
                choice = 0 if rp == STOPPED else -1
    else:
        if rm == STOPPED:
            b_p[0] = min(b_p[0], volat_m[st_m[0] - 1] - 1)
        if rm == STOPPED or rm == OVERWEIGHT:
            while rp == RUNNING:
                rp = _grow_step(fptr, fnbr, fw, deg, mask_p, T, K, num, den, b_p,
                                heap_p, dist_p, done_p, touched_p, settled_p, cum_p,
                                volat_p, st_p)
            if rp == STOPPED:
                choice = 0
            elif rp == OVERWEIGHT:
                choice = 1 if rm == STOPPED else -1
    return choice, rp, rm


@njit(cache=True)
def race_kernel(fptr, fnbr, fw, rptr, rnbr, rw, deg, mask_p, mask_m, s,
                T, K, num, den, budget, dist_p, done_p, dist_m, done_m):
    """Grow the out-ball and in-ball of ``s`` in lockstep, keep the smaller.

    Returns ``(choice, status_p, status_m, st, volat, verts, dists)`` where
    choice is 0 for the out-ball, 1 for the in-ball, -1 if both exceed
    ``budget`` and -2 on a guard/negative-edge failure.
    """
    heap_p = [(np.int64(0), np.int64(s))]
    heap_m = [(np.int64(0), np.int64(s))]
    touched_p = [np.int64(s)]
    touched_m = [np.int64(s)]
    settled_p = [np.int64(0)]
    settled_p.pop()
    settled_m = [np.int64(0)]
    settled_m.pop()
    cum_p = [np.int64(0)]
    cum_p.pop()
    cum_m = [np.int64(0)]
    cum_m.pop()
    dist_p[s] = 0
    dist_m[s] = 0
    volat_p = np.zeros(K + 1, dtype=np.int64)
    volat_m = np.zeros(K + 1, dtype=np.int64)
    st_p = np.zeros(5, dtype=np.int64)
    st_m = np.zeros(5, dtype=np.int64)
    b_p = np.array([budget], dtype=np.int64)
    b_m = np.array([budget], dtype=np.int64)
    choice, rp, rm = _race_core(fptr, fnbr, fw, rptr, rnbr, rw, deg, mask_p, mask_m,
                                T, K, num, den, b_p, b_m, heap_p, heap_m, dist_p, done_p,
                                dist_m, done_m, touched_p, touched_m, settled_p, settled_m,
                                cum_p, cum_m, volat_p, volat_m, st_p, st_m)
    vp, dp = _grow_collect(settled_p, dist_p, done_p, touched_p)
    vm, dm = _grow_collect(settled_m, dist_m, done_m, touched_m)
    work = st_p[4] + st_m[4]
    if choice == 1:
        st_m[4] = work
        return choice, rp, rm, st_m, volat_m, vm, dm
    st_p[4] = work
    return choice, rp, rm, st_p, volat_p, vp, dp


@njit(cache=True)
def light_kernel(fptr, fnbr, fw, rptr, rnbr, rw, deg, base_mask, order, m,
                 T, K, num, den, budget, dist_p, done_p, dist_m, done_m):
    """The light-case loop: add small balls to U+ / U- until one reaches m/2.

    Balls are grown on ``G{V - U+}`` (out) and ``G{V - U-}`` (in) with the
    caller's degrees.  Returns ``(status, s, in_p, in_m, vol_p, vol_m, rec,
    work)``: status 0 when the loop completes, 1 when both balls of ``s``
    exceed ``budget`` (heavy trigger), 2 on a guard failure.  ``rec`` rows are
    ``(source, side, increment, size, ball volume, padded volume)``.
    """
    n = base_mask.shape[0]
    in_p = np.zeros(n, dtype=np.uint8)
    in_m = np.zeros(n, dtype=np.uint8)
    mask_p = base_mask.copy()
    mask_m = base_mask.copy()
    vol_p = 0
    vol_m = 0
    rec = [(np.int64(0), np.int64(0), np.int64(0), np.int64(0), np.int64(0), np.int64(0))]
    rec.pop()
    work = 0
    cursor = 0
    volat_p = np.zeros(K + 1, dtype=np.int64)
    volat_m = np.zeros(K + 1, dtype=np.int64)
    st_p = np.zeros(5, dtype=np.int64)
    st_m = np.zeros(5, dtype=np.int64)
    b_p = np.zeros(1, dtype=np.int64)
    b_m = np.zeros(1, dtype=np.int64)
    status = 0
    trigger = -1
    while 2 * vol_p < m and 2 * vol_m < m:
        while cursor < order.shape[0] and (in_p[order[cursor]] == 1 or in_m[order[cursor]] == 1):
            cursor += 1
        if cursor == order.shape[0]:
            status = 2
            break
        s = order[cursor]
        heap_p = [(np.int64(0), np.int64(s))]
        heap_m = [(np.int64(0), np.int64(s))]
        touched_p = [np.int64(s)]
        touched_m = [np.int64(s)]
        settled_p = [np.int64(0)]
        settled_p.pop()
        settled_m = [np.int64(0)]
        settled_m.pop()
        cum_p = [np.int64(0)]
        cum_p.pop()
        cum_m = [np.int64(0)]
        cum_m.pop()
        dist_p[s] = 0
        dist_m[s] = 0
        st_p[:] = 0
        st_m[:] = 0
        b_p[0] = budget
        b_m[0] = budget
        choice, rp, rm = _race_core(fptr, fnbr, fw, rptr, rnbr, rw, deg, mask_p, mask_m,
                                    T, K, num, den, b_p, b_m, heap_p, heap_m, dist_p, done_p,
                                    dist_m, done_m, touched_p, touched_m, settled_p, settled_m,
                                    cum_p, cum_m, volat_p, volat_m, st_p, st_m)
        work += st_p[4] + st_m[4]
        if choice == 0 or choice == 1:
            if choice == 0:
                i = st_p[0]
                lim = T[i - 1]
                size = 0
                for v in settled_p:
                    if dist_p[v] <= lim:
                        in_p[v] = 1
                        mask_p[v] = 0
                        size += 1
                vol_p += volat_p[i - 1]
                rec.append((s, np.int64(1), i, np.int64(size), volat_p[i - 1], st_p[1]))
            else:
                i = st_m[0]
                lim = T[i - 1]
                size = 0
                for v in settled_m:
                    if dist_m[v] <= lim:
                        in_m[v] = 1
                        mask_m[v] = 0
                        size += 1
                vol_m += volat_m[i - 1]
                rec.append((s, np.int64(-1), i, np.int64(size), volat_m[i - 1], st_m[1]))
        elif choice == -1:
            status = 1
            trigger = s
        else:
            status = 2
            trigger = s
        _grow_collect(settled_p, dist_p, done_p, touched_p)
        _grow_collect(settled_m, dist_m, done_m, touched_m)
        if status != 0:
            break
    out = np.empty((len(rec), 6), dtype=np.int64)
    for j in range(len(rec)):
        r = rec[j]
        out[j, 0] = r[0]
        out[j, 1] = r[1]
        out[j, 2] = r[2]
        out[j, 3] = r[3]
        out[j, 4] = r[4]
        out[j, 5] = r[5]
    return status, trigger, in_p, in_m, vol_p, vol_m, out, work


@njit(cache=True)
def _phase_dijkstra(ptr, nbr, eid, wk, dist, par, heap, changed, changed_list, prev):
    while len(heap) > 0:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for k in range(ptr[v], ptr[v + 1]):
            wt = wk[k]
            if wt < 0:
                continue
            u = np.int64(nbr[k])
            nd = d + wt
            if nd < dist[u]:
                if changed[u] == 0:
                    prev[u] = dist[u]
                    changed[u] = 1
                    changed_list.append(u)
                dist[u] = nd
                par[u] = eid[k]
                heapq.heappush(heap, (nd, u))


@njit(cache=True)
def hybrid_bfd_kernel(ptr, nbr, eid, wk, n, source, neg_t, neg_h, neg_w, neg_e, eta, record):
    """Phased Bellman-Ford/Dijkstra.

    After phase ``k`` the labels equal the best walk weight using at most
    ``k`` negative edges.  Returns ``(status, phases, witness, bound, dist,
    par, rec)`` with status 0 on a fixed point and 1 if phase ``eta + 1``
    still improved (``witness`` is then the smallest improved vertex and
    ``bound`` its label after phase ``eta``).
    """
    dist = np.full(n, INF, dtype=np.int64)
    par = np.full(n, -1, dtype=np.int64)
    changed = np.zeros(n, dtype=np.uint8)
    cand = np.full(n, INF, dtype=np.int64)
    cpar = np.full(n, -1, dtype=np.int64)
    prev = np.full(n, INF, dtype=np.int64)
    rows = eta + 2 if record else 0
    rec = np.empty((rows, n), dtype=np.int64)
    heap = [(np.int64(0), np.int64(0))]
    heap.pop()
    changed_list = [np.int64(source)]
    dist[source] = 0
    changed[source] = 1
    heapq.heappush(heap, (np.int64(0), np.int64(source)))
    _phase_dijkstra(ptr, nbr, eid, wk, dist, par, heap, changed, changed_list, prev)
    if record:
        rec[0, :] = dist
    nneg = neg_t.shape[0]
    for k in range(1, eta + 2):
        cand_list = [np.int64(0)]
        cand_list.pop()
        for j in range(nneg):
            u = neg_t[j]
            if changed[u] == 0:
                continue
            nd = dist[u] + neg_w[j]
            v = neg_h[j]
            if nd < dist[v] and nd < cand[v]:
                if cand[v] == INF:
                    cand_list.append(v)
                cand[v] = nd
                cpar[v] = neg_e[j]
        for v in changed_list:
            changed[v] = 0
        changed_list = [np.int64(0)]
        changed_list.pop()
        for v in cand_list:
            prev[v] = dist[v]
            dist[v] = cand[v]
            par[v] = cpar[v]
            cand[v] = INF
            changed[v] = 1
            changed_list.append(v)
            heapq.heappush(heap, (dist[v], v))
        _phase_dijkstra(ptr, nbr, eid, wk, dist, par, heap, changed, changed_list, prev)
        if record:
            rec[k, :] = dist
        if len(changed_list) == 0:
            return 0, k, -1, INF, dist, par, rec[:k + 1]
    witness = n
    for v in changed_list:
        if v < witness:
            witness = v
    return 1, eta + 1, witness, prev[witness], dist, par, rec


@njit(cache=True)
def bfs_kernel(ptr, nbr, n, source):
    seen = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    seen[source] = 1
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        for k in range(ptr[v], ptr[v + 1]):
            u = np.int64(nbr[k])
            if seen[u] == 0:
                seen[u] = 1
                queue[tail] = u
                tail += 1
    return queue[:tail]


@njit(cache=True)
def csr_kernel(n, keys):
    """Stable counting sort of edge ids by key; returns 32-bit (ptr, order)."""
    m = keys.shape[0]
    ptr = np.zeros(n + 1, dtype=np.int32)
    for e in range(m):
        ptr[keys[e] + 1] += 1
    for v in range(n):
        ptr[v + 1] += ptr[v]
    fill = ptr[:n].copy()
    order = np.empty(m, dtype=np.int32)
    for e in range(m):
        k = keys[e]
        order[fill[k]] = e
        fill[k] += 1
    return ptr, order


@njit(cache=True)
def bfs_tree_kernel(ptr, nbr, eid, n, source):
    """Parent edge of every vertex in a BFS tree from ``source`` (-1 = none)."""
    par = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    seen[source] = 1
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        for k in range(ptr[v], ptr[v + 1]):
            u = np.int64(nbr[k])
            if seen[u] == 0:
                seen[u] = 1
                par[u] = eid[k]
                queue[tail] = u
                tail += 1
    return par

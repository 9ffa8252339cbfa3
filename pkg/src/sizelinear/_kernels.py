"""Hot inner loops.

Every kernel is written once and built twice: compiled with ``numba.njit`` and
as plain Python operating on the same numpy arrays. The default backend is the
compiled one; set ``SIZELINEAR_DISABLE_NUMBA=1`` (or run without numba
installed) to select the pure-Python path. Both builds are always reachable as
``kernels_for("numba")`` / ``kernels_for("python")`` so tests and the benchmark
can compare them in one process.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLED = os.environ.get("SIZELINEAR_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
USE_NUMBA = numba is not None and not DISABLED

FOUND = 1
EXHAUSTED = 0
PAUSED = 2


def _build(jit):
    @jit
    def popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @jit
    def free_pebbles(out, x):
        c = 0
        if out[x, 0] < 0:
            c += 1
        if out[x, 1] < 0:
            c += 1
        return c

    # ------------------------------------------------------------------
    # Two-coloring search over the edges of K_N.
    #
    # Copies of both forbidden patterns live in one CSR table; copy k is
    # forbidden in colour cp_color[k]. same[k] / other[k] count the edges of
    # copy k currently coloured cp_color[k] / the opposite colour. A copy
    # with every edge but one in its forbidden colour forces the last edge.
    # ctrl = [depth, trail_len, nodes, mode]; mode 0 = descend, 1 = backtrack.
    # ------------------------------------------------------------------

    @jit
    def propagate(e, c, cp_ptr, cp_edges, cp_color, ec_ptr, ec_idx,
                  color, same, other, trail, ctrl, queue_e, queue_c):
        qh = 0
        qt = 1
        queue_e[0] = e
        queue_c[0] = c
        while qh < qt:
            x = queue_e[qh]
            cx = queue_c[qh]
            qh += 1
            cur = color[x]
            if cur == cx:
                continue
            if cur != -1:
                return False
            color[x] = cx
            trail[ctrl[1]] = x
            ctrl[1] += 1
            ok = True
            for p in range(ec_ptr[x], ec_ptr[x + 1]):
                k = ec_idx[p]
                if cp_color[k] == cx:
                    same[k] += 1
                    if other[k] == 0:
                        size = cp_ptr[k + 1] - cp_ptr[k]
                        if same[k] == size:
                            ok = False
                        elif same[k] == size - 1:
                            for q in range(cp_ptr[k], cp_ptr[k + 1]):
                                y = cp_edges[q]
                                if color[y] == -1:
                                    queue_e[qt] = y
                                    queue_c[qt] = 1 - cx
                                    qt += 1
                                    break
                else:
                    other[k] += 1
            if not ok:
                return False
        return True

    @jit
    def undo(mark, cp_color, ec_ptr, ec_idx, color, same, other, trail, ctrl):
        while ctrl[1] > mark:
            ctrl[1] -= 1
            x = trail[ctrl[1]]
            cx = color[x]
            for p in range(ec_ptr[x], ec_ptr[x + 1]):
                k = ec_idx[p]
                if cp_color[k] == cx:
                    same[k] -= 1
                else:
                    other[k] -= 1
            color[x] = -1

    @jit
    def assign_root(edges, colors, cp_ptr, cp_edges, cp_color, ec_ptr, ec_idx,
                    color, same, other, trail, ctrl, queue_e, queue_c):
        """Fix root assignments (depth 0, never undone). False on conflict."""
        for i in range(edges.shape[0]):
            if not propagate(edges[i], colors[i], cp_ptr, cp_edges, cp_color, ec_ptr, ec_idx,
                             color, same, other, trail, ctrl, queue_e, queue_c):
                return False
        return True

    @jit
    def arrow_search(cp_ptr, cp_edges, cp_color, ec_ptr, ec_idx, color, same, other,
                     trail, ctrl, dec_edge, dec_mark, dec_tried, queue_e, queue_c,
                     first_color, node_limit):
        """Resumable DFS. Returns FOUND, EXHAUSTED or PAUSED (node_limit reached)."""
        n_edges = color.shape[0]
        while True:
            if ctrl[3] == 0:
                depth = ctrl[0]
                start = dec_edge[depth - 1] + 1 if depth > 0 else 0
                e = -1
                for x in range(start, n_edges):
                    if color[x] == -1:
                        e = x
                        break
                if e < 0:
                    return 1
                if ctrl[2] >= node_limit:
                    return 2
                dec_edge[depth] = e
                dec_mark[depth] = ctrl[1]
                dec_tried[depth] = 1
                ctrl[0] = depth + 1
                ctrl[2] += 1
                if not propagate(e, first_color, cp_ptr, cp_edges, cp_color, ec_ptr, ec_idx,
                                 color, same, other, trail, ctrl, queue_e, queue_c):
                    ctrl[3] = 1
            else:
                depth = ctrl[0]
                if depth == 0:
                    return 0
                lvl = depth - 1
                undo(dec_mark[lvl], cp_color, ec_ptr, ec_idx, color, same, other, trail, ctrl)
                if dec_tried[lvl] == 1:
                    dec_tried[lvl] = 2
                    ctrl[2] += 1
                    if propagate(dec_edge[lvl], 1 - first_color, cp_ptr, cp_edges, cp_color,
                                 ec_ptr, ec_idx, color, same, other, trail, ctrl, queue_e, queue_c):
                        ctrl[3] = 0
                else:
                    ctrl[0] = lvl

    # ------------------------------------------------------------------
    # max over vertex sets S with |S| >= 3 of e(S) - 2|S| + 2
    # ------------------------------------------------------------------

    @jit
    def max_slack(adj, n):
        """Branch and bound over vertex subsets (include-first). Returns (best, mask).

        best is -1 with mask 0 when no subset reaches slack 0.
        """
        best = -1
        best_mask = 0
        full = (1 << n) - 1
        m = np.zeros(n + 1, np.int64)
        ec = np.zeros(n + 1, np.int64)
        vc = np.zeros(n + 1, np.int64)
        branch = np.zeros(n + 1, np.int64)
        i = 0
        while i >= 0:
            if i == n:
                if vc[i] >= 3:
                    val = ec[i] - 2 * vc[i] + 2
                    if val > best:
                        best = val
                        best_mask = m[i]
                i -= 1
                continue
            if branch[i] == 0:
                ub = ec[i] - 2 * vc[i] + 2
                for j in range(i, n):
                    later = full & ~((1 << (j + 1)) - 1)
                    gain = popcount(adj[j] & (m[i] | later)) - 2
                    if gain > 0:
                        ub += gain
                if ub <= best:
                    i -= 1
                    continue
                branch[i] = 1
                m[i + 1] = m[i] | (1 << i)
                ec[i + 1] = ec[i] + popcount(adj[i] & m[i])
                vc[i + 1] = vc[i] + 1
                branch[i + 1] = 0
                i += 1
            elif branch[i] == 1:
                branch[i] = 2
                m[i + 1] = m[i]
                ec[i + 1] = ec[i]
                vc[i + 1] = vc[i]
                branch[i + 1] = 0
                i += 1
            else:
                i -= 1
        return best, best_mask

    # ------------------------------------------------------------------
    # (2,3) pebble game: accepts an edge set iff every vertex set S with
    # |S| >= 2 spans at most 2|S| - 3 edges.
    # ------------------------------------------------------------------

    @jit
    def find_pebble(root, avoid, out, seen, parent, stack):
        """Move one free pebble to root along reversed out-edges, never via avoid."""
        n = out.shape[0]
        for i in range(n):
            seen[i] = False
        seen[root] = True
        seen[avoid] = True
        top = 1
        stack[0] = root
        while top > 0:
            top -= 1
            x = stack[top]
            for k in range(2):
                y = out[x, k]
                if y < 0 or seen[y]:
                    continue
                seen[y] = True
                parent[y] = x
                if out[y, 0] < 0 or out[y, 1] < 0:
                    # y has a free pebble: reverse path root -> ... -> y
                    z = y
                    while z != root:
                        p = parent[z]
                        for s in range(2):
                            if out[p, s] == z:
                                out[p, s] = -1
                                break
                        for s in range(2):
                            if out[z, s] < 0:
                                out[z, s] = p
                                break
                        z = p
                    return True
                stack[top] = y
                top += 1
        return False

    @jit
    def pebble_game(n, eu, ev):
        """Returns (index of first rejected edge or -1, reach flags of the failed block)."""
        out = -np.ones((n, 2), np.int64)
        seen = np.zeros(n, np.bool_)
        parent = np.zeros(n, np.int64)
        stack = np.zeros(n + 1, np.int64)
        reach = np.zeros(n, np.bool_)
        for i in range(eu.shape[0]):
            u = eu[i]
            v = ev[i]
            while True:
                pu = free_pebbles(out, u)
                pv = free_pebbles(out, v)
                if pu + pv >= 4:
                    break
                if pu < 2:
                    moved = find_pebble(u, v, out, seen, parent, stack)
                else:
                    moved = find_pebble(v, u, out, seen, parent, stack)
                if not moved:
                    reach[u] = True
                    reach[v] = True
                    top = 2
                    stack[0] = u
                    stack[1] = v
                    while top > 0:
                        top -= 1
                        x = stack[top]
                        for k in range(2):
                            y = out[x, k]
                            if y >= 0 and not reach[y]:
                                reach[y] = True
                                stack[top] = y
                                top += 1
                    return i, reach
            if out[u, 0] < 0:
                out[u, 0] = v
            else:
                out[u, 1] = v
        return -1, reach

    # ------------------------------------------------------------------
    # Greedy high-girth construction.
    # ------------------------------------------------------------------

    @jit
    def within(src, dst, limit, nbr, deg, dist, queue):
        """True iff dist(src, dst) <= limit; dist must be all -1 on entry and is restored."""
        dist[src] = 0
        head = 0
        tail = 1
        queue[0] = src
        found = False
        while head < tail and not found:
            x = queue[head]
            head += 1
            if dist[x] >= limit:
                continue
            for k in range(deg[x]):
                y = nbr[x, k]
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue[tail] = y
                    tail += 1
                    if y == dst:
                        found = True
                        break
        for k in range(tail):
            dist[queue[k]] = -1
        return found

    @jit
    def exact_distance(src, dst, nbr, deg, dist, queue):
        """Hop distance, or -1 when unreachable; dist restored to -1."""
        return_value = -1
        dist[src] = 0
        head = 0
        tail = 1
        queue[0] = src
        while head < tail:
            x = queue[head]
            head += 1
            if x == dst:
                return_value = dist[x]
                break
            for k in range(deg[x]):
                y = nbr[x, k]
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue[tail] = y
                    tail += 1
        for k in range(tail):
            dist[queue[k]] = -1
        return return_value

    @jit
    def greedy_girth(n, g, cap, pu, pv):
        """Join pairs (in the given order, repeated passes) at distance >= g under a degree cap.

        Returns (added_u, added_v, added_dist, count); added_dist is -1 for
        pairs in different components.
        """
        nbr = -np.ones((n, cap), np.int64)
        deg = np.zeros(n, np.int64)
        dist = -np.ones(n, np.int64)
        queue = np.zeros(n, np.int64)
        max_add = n * cap // 2 + 1
        au = np.zeros(max_add, np.int64)
        av = np.zeros(max_add, np.int64)
        ad = np.zeros(max_add, np.int64)
        count = 0
        changed = True
        while changed:
            changed = False
            for i in range(pu.shape[0]):
                u = pu[i]
                v = pv[i]
                if deg[u] >= cap or deg[v] >= cap:
                    continue
                if within(u, v, g - 1, nbr, deg, dist, queue):
                    continue
                d = exact_distance(u, v, nbr, deg, dist, queue)
                nbr[u, deg[u]] = v
                deg[u] += 1
                nbr[v, deg[v]] = u
                deg[v] += 1
                au[count] = u
                av[count] = v
                ad[count] = d
                count += 1
                changed = True
        return au, av, ad, count

    return SimpleNamespace(
        popcount=popcount,
        propagate=propagate,
        undo=undo,
        assign_root=assign_root,
        arrow_search=arrow_search,
        max_slack=max_slack,
        pebble_game=pebble_game,
        greedy_girth=greedy_girth,
    )


_BUILDS: dict[str, SimpleNamespace] = {}


def kernels_for(backend: str) -> SimpleNamespace:
    """Kernel namespace for ``"numba"`` or ``"python"``."""
    if backend not in _BUILDS:
        if backend == "numba":
            if numba is None:
                raise RuntimeError("numba is not installed")
            _BUILDS[backend] = _build(numba.njit(cache=True, nogil=True))
        elif backend == "python":
            _BUILDS[backend] = _build(lambda f: f)
        else:
            raise ValueError(f"unknown kernel backend {backend!r}")
    return _BUILDS[backend]


def default_backend() -> str:
    return "numba" if USE_NUMBA else "python"


def kernels() -> SimpleNamespace:
    return kernels_for(default_backend())

"""Compiled all-pairs comparison used by the exhaustive sweep.

For every source of S(G, t) one BFS row is compared in place against the
pair formulas, so no ``N x N`` block is ever materialised.  An automorphism
of G applied letter by letter is an automorphism of S(G, t), so BFS runs
once per orbit of sources and the row is moved to the other orbit members;
the permutations are checked against the explicit edge set first.
"""

from __future__ import annotations

import numba
import numpy as np

from .base_graph import BaseGraph

# slots of the stats vector
FULL_CMP, FULL_MIS, COND_CMP, COND_MIS, PRE_CMP, PRE_MIS = range(6)
BAD_FULL, BAD_COND, BAD_PRE = 6, 8, 10
STATS_LEN = 12


def pair_arrays(g: BaseGraph, longer: bool) -> tuple[np.ndarray, ...]:
    """CSR-style ``(ptr, a, b)`` of phi, then of phi' (empty unless ``longer``)."""
    out = []
    for source in (g.phi, g.phi_prime if longer else None):
        ptr = np.zeros(g.n * g.n + 1, dtype=np.int64)
        a, b = [], []
        for x in range(g.n):
            for y in range(g.n):
                if source is not None and x != y:
                    for p, q in sorted(source(x, y)):
                        a.append(p)
                        b.append(q)
                ptr[x * g.n + y + 1] = len(a)
        out += [ptr, np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)]
    return tuple(out)


def stacked_tables(tables: list[np.ndarray], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate extreme tables column-wise; ``off[k]`` starts level ``k``."""
    off = np.zeros(len(tables) + 2, dtype=np.int64)
    for k, tab in enumerate(tables, start=1):
        off[k + 1] = off[k] + tab.shape[1]
    flat = np.concatenate(tables, axis=1) if tables else np.zeros((n, 0), dtype=np.int64)
    # distances stay far below 2**31 for any graph small enough to sweep
    return np.ascontiguousarray(flat, dtype=np.int32), off


@numba.njit(cache=True)
def _bfs(indptr, indices, s, dist, queue):
    dist[:] = -1
    dist[s] = 0
    queue[0] = s
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        nd = dist[v] + 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if dist[u] < 0:
                dist[u] = nd
                queue[tail] = u
                tail += 1
    return dist[queue[tail - 1]]


@numba.njit(cache=True)
def _block_min(E, o, rs, shift, ptr, pa, pb, q, out, lo, block, seed, seeded):
    """``out[lo:lo+block] = min_p E[pa, o+rs] + E[pb, o+r] + shift``, also bounded by ``seed`` if ``seeded``."""
    dst = out[lo : lo + block]
    src = seed[lo : lo + block]
    if seeded and ptr[q] == ptr[q + 1]:
        dst[:] = src
    for p in range(ptr[q], ptr[q + 1]):
        c = np.int32(E[pa[p], o + rs] + shift)
        row = E[pb[p], o : o + block]
        if p > ptr[q]:
            for r in range(block):
                dst[r] = min(dst[r], c + row[r])
        elif seeded:
            for r in range(block):
                dst[r] = min(src[r], c + row[r])
        else:
            for r in range(block):
                dst[r] = c + row[r]


@numba.njit(cache=True)
def _formula_row(s, n, t, pw, D, E, off, pp, pa, pb, lp, la, lb, use_longer, no_cycle, want_prem, theta, full, prem):
    base = 0
    for k in range(t, 0, -1):
        block = pw[k - 1]
        x = (s // block) % n
        rs = s % block
        for y in range(n):
            if y == x:
                continue
            st = base + y * block
            if want_prem:
                prem[st : st + block] = no_cycle[x] or no_cycle[y]
            if k == 1:
                theta[st] = D[x, y]
                full[st] = D[x, y]
                continue
            d = D[x, y]
            m = (1 << k) - 1
            q = x * n + y
            o = off[k - 1]
            _block_min(E, o, rs, m * d - 2 * ((1 << (k - 1)) - 1), pp, pa, pb, q, theta, st, block, theta, False)
            if use_longer:
                _block_min(E, o, rs, m * d + 1, lp, la, lb, q, full, st, block, theta, True)
        base += x * block
    theta[s] = 0
    full[s] = 0
    prem[s] = False


def letter_permutations(g: BaseGraph, t: int) -> np.ndarray:
    """Row ``i`` maps dense word indices through the ``i``-th base automorphism."""
    n = g.n
    idx = np.arange(n**t, dtype=np.int64)
    digits = [(idx // n**pos) % n for pos in range(t)]
    out = np.empty((len(g.automorphisms), n**t), dtype=np.int32)
    for row, sigma in enumerate(g.automorphisms):
        sigma = np.asarray(sigma, dtype=np.int64)
        out[row] = sum(sigma[dig] * n**pos for pos, dig in enumerate(digits))
    return out


def automorphism_mismatches(indptr: np.ndarray, indices: np.ndarray, perms: np.ndarray) -> tuple[int, int]:
    """``(edges compared, edges not mapped onto edges)`` over all permutations."""
    N = indptr.size - 1
    heads = np.repeat(np.arange(N, dtype=np.int64), np.diff(indptr))
    tails = indices.astype(np.int64)
    keys = np.sort(heads * N + tails)
    bad = 0
    for perm in perms:
        mapped = np.sort(perm[heads].astype(np.int64) * N + perm[tails])
        bad += int(np.count_nonzero(mapped != keys))
    return perms.shape[0] * keys.size, bad


@numba.njit(cache=True)
def fused_sweep(
    indptr, indices, pindptr, pindices, has_prev, n, t, perms,
    D, E, off, pp, pa, pb, lp, la, lb, no_cycle,
    check_full, use_longer, check_cond,
):
    N = indptr.size - 1
    inner = N // n
    pw = np.empty(t + 1, dtype=np.int64)
    pw[0] = 1
    for i in range(1, t + 1):
        pw[i] = pw[i - 1] * n
    rdist = np.empty(N, dtype=np.int32)
    dist = np.empty(N, dtype=np.int32)
    queue = np.empty(N, dtype=np.int32)
    rpdist = np.empty(max(inner, 1), dtype=np.int32)
    pqueue = np.empty(max(inner, 1), dtype=np.int32)
    theta = np.empty(N, dtype=np.int32)
    full = np.empty(N, dtype=np.int32)
    prem = np.empty(N, dtype=np.bool_)
    ecc = np.empty(N, dtype=np.int64)
    done = np.zeros(N, dtype=np.bool_)
    stats = np.zeros(STATS_LEN, dtype=np.int64)
    stats[BAD_FULL:] = -1
    formulas = check_full or check_cond
    last_u = -1
    # suffix-major order so sources x.u sharing u reuse one level t-1 BFS
    for q in range(N):
        r = (q % n) * inner + q // n
        if done[r]:
            continue
        # one BFS per orbit; the other sources get the row moved by an automorphism
        e = _bfs(indptr, indices, r, rdist, queue)
        if has_prev and r % inner != last_u:
            last_u = r % inner
            _bfs(pindptr, pindices, last_u, rpdist, pqueue)
        if has_prev:
            # the check for sigma(r) is this one relabelled, so it runs once per orbit
            lo = (r // inner) * inner
            bad = 0
            for j in range(inner):
                if rdist[lo + j] != rpdist[j]:
                    bad += 1
                    if stats[BAD_PRE] < 0:
                        stats[BAD_PRE] = r
                        stats[BAD_PRE + 1] = lo + j
        for k in range(perms.shape[0]):
            s = perms[k, r]
            if done[s]:
                continue
            done[s] = True
            # row 0 of the permutations is the identity
            row = rdist
            if k > 0:
                perm = perms[k]
                for v in range(N):
                    dist[perm[v]] = rdist[v]
                row = dist
            ecc[s] = e
            if has_prev:
                stats[PRE_CMP] += inner
                stats[PRE_MIS] += bad
            if not formulas:
                continue
            _formula_row(s, n, t, pw, D, E, off, pp, pa, pb, lp, la, lb, use_longer, no_cycle, check_cond, theta, full, prem)
            got = full if use_longer else theta
            bad_full = 0
            cmp_cond = 0
            bad_cond = 0
            if check_cond:
                for j in range(N):
                    want = row[j]
                    bad_full += got[j] != want
                    cmp_cond += prem[j]
                    bad_cond += prem[j] & (theta[j] != want)
            elif check_full:
                for j in range(N):
                    bad_full += got[j] != row[j]
            if not check_full:
                bad_full = 0
            if bad_full and stats[BAD_FULL] < 0:
                stats[BAD_FULL] = s
                stats[BAD_FULL + 1] = np.argmax(got != row)
            if bad_cond and stats[BAD_COND] < 0:
                stats[BAD_COND] = s
                stats[BAD_COND + 1] = np.argmax(prem & (theta != row))
            if check_full:
                stats[FULL_CMP] += N
                stats[FULL_MIS] += bad_full
            stats[COND_CMP] += cmp_cond
            stats[COND_MIS] += bad_cond
    return stats, ecc

"""Compiled inner loop of the sequential importance sampler.

Everything here is a pure function of (target degrees, uniforms); all
randomness is injected, so draws are reproducible under any schedule.
"""

import math

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_DEAD_END = 1
STATUS_PICK_FAILED = 2


@njit(cache=True, nogil=True)
def _eg_graphical_hist(hist, n, total):
    # Erdos-Gallai check on a degree-value histogram: hist[v] = count of
    # entries equal to v, v in 0..n; n entries with value total.
    if total % 2 == 1:
        return False
    if n == 0:
        return True
    maxv = 0
    for v in range(n, -1, -1):
        if hist[v] > 0:
            maxv = v
            break
    if maxv == 0:
        return True
    if maxv > n - 1:
        return False
    cnt_ge = np.zeros(n + 2, np.int64)
    for v in range(n, -1, -1):
        cnt_ge[v] = cnt_ge[v + 1] + hist[v]
    sum_lt = np.zeros(n + 2, np.int64)
    for k in range(1, n + 2):
        sum_lt[k] = sum_lt[k - 1] + (k - 1) * hist[k - 1]
    cur_v = maxv
    cnt_left = hist[maxv]
    running = 0
    for k in range(1, n + 1):
        while cnt_left == 0:
            cur_v -= 1
            cnt_left = hist[cur_v]
        running += cur_v
        cnt_left -= 1
        extra = cnt_ge[k] - k
        if extra < 0:
            extra = 0
        rest = total - running
        slt = sum_lt[k]
        if rest < slt:
            slt = rest
        if running > k * (k - 1) + k * extra + slt:
            return False
    return True


@njit(cache=True, nogil=True)
def sample_kernel(target, u, edges_out):
    """Build one graph with the target degree sequence.

    target: int64[n] graphical degrees; u: float64[m] uniforms, one per edge;
    edges_out: int64[m, 2] output buffer filled in construction order with
    the active node first. Returns (status, edges written, log system
    probability, log multiplicity).
    """
    n = target.size
    res = target.copy()
    adj = np.zeros((n, n), np.bool_)
    base_hist = np.zeros(n + 1, np.int64)
    probe = np.zeros(n + 1, np.int64)
    feas = np.zeros(n + 1, np.int8)
    log_sigma = 0.0
    log_c = 0.0
    m_out = 0
    u_idx = 0
    res_total = 0
    for v in range(n):
        res_total += res[v]
    while True:
        # next active node: minimal positive residual, lowest index on ties
        i = -1
        best = 0
        for v in range(n):
            if res[v] > 0 and (i == -1 or res[v] < best):
                best = res[v]
                i = v
        if i == -1:
            break
        log_c += math.lgamma(best + 1.0)
        while res[i] > 0:
            for v in range(n + 1):
                base_hist[v] = 0
                feas[v] = 0
            for v in range(n):
                base_hist[res[v]] += 1
            base_hist[res[i]] -= 1
            base_hist[res[i] - 1] += 1
            # feasibility depends on a candidate only through its residual
            # degree, so test once per distinct value
            wsum = 0.0
            for j in range(n):
                if j == i or res[j] < 1 or adj[i, j]:
                    continue
                vj = res[j]
                if feas[vj] == 0:
                    for v in range(n + 1):
                        probe[v] = base_hist[v]
                    probe[vj] -= 1
                    probe[vj - 1] += 1
                    ok = _eg_graphical_hist(probe, n, res_total - 2)
                    feas[vj] = 1 if ok else 2
                if feas[vj] == 1:
                    wsum += res[j]
            if wsum <= 0.0:
                return STATUS_DEAD_END, m_out, log_sigma, log_c
            r = u[u_idx] * wsum
            u_idx += 1
            chosen = -1
            last = -1
            acc = 0.0
            for j in range(n):
                if j == i or res[j] < 1 or adj[i, j] or feas[res[j]] != 1:
                    continue
                last = j
                acc += res[j]
                if r < acc:
                    chosen = j
                    break
            if chosen == -1:
                # r can round up to exactly wsum when u is within an ulp of 1
                chosen = last
            if chosen == -1:
                return STATUS_PICK_FAILED, m_out, log_sigma, log_c
            log_sigma += math.log(res[chosen]) - math.log(wsum)
            adj[i, chosen] = True
            adj[chosen, i] = True
            edges_out[m_out, 0] = i
            edges_out[m_out, 1] = chosen
            m_out += 1
            res[i] -= 1
            res[chosen] -= 1
            res_total -= 2
    return STATUS_OK, m_out, log_sigma, log_c

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact-minimization kernel.

Twin of ``_pure``: enumerates restricted-growth strings with exactly k
labels in lexicographic order and tracks the cost-minimal partition under
the shared tie rule.  This loop dominates the runtime of every exact
solve, hence the compiled core.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "native"

KMEANS, KMEDIAN, KMEDOIDS, MINSUM, MINDIAMETER, KCENTER, RATIOCUT = range(7)

cdef int C_KMEANS = 0
cdef int C_KMEDIAN = 1
cdef int C_KMEDOIDS = 2
cdef int C_MINSUM = 3
cdef int C_MINDIAMETER = 4
cdef int C_KCENTER = 5
cdef int C_RATIOCUT = 6


cdef double _evaluate(double[:, :] v, double[:] w, long[:] lab, int n, int k,
                      int objective, double* cw, double* acc, double* comp) nogil:
    cdef int i, j, c, e
    cdef double total, y, t, term, d, s, best, worst, radius

    if objective == C_MINSUM:
        total = 0.0
        y = 0.0  # kahan compensation
        for i in range(n):
            for j in range(i + 1, n):
                if lab[i] == lab[j]:
                    term = v[i, j] * w[i] * w[j] - y
                    t = total + term
                    y = (t - total) - term
                    total = t
        return total

    if objective == C_KMEANS:
        for c in range(k):
            cw[c] = 0.0
            acc[c] = 0.0
            comp[c] = 0.0
        for i in range(n):
            cw[lab[i]] += w[i]
        for i in range(n):
            for j in range(i + 1, n):
                c = lab[i]
                if c == lab[j]:
                    term = v[i, j] * v[i, j] * w[i] * w[j] - comp[c]
                    t = acc[c] + term
                    comp[c] = (t - acc[c]) - term
                    acc[c] = t
        total = 0.0
        for c in range(k):
            total += acc[c] / cw[c]
        return total

    if objective == C_KMEDIAN or objective == C_KMEDOIDS:
        total = 0.0
        for c in range(k):
            best = -1.0
            for e in range(n):
                if lab[e] != c:
                    continue
                s = 0.0
                for i in range(n):
                    if lab[i] != c:
                        continue
                    d = v[i, e]
                    if objective == C_KMEDOIDS:
                        d = d * d
                    s += d * w[i]
                if best < 0.0 or s < best:
                    best = s
            total += best
        return total

    if objective == C_MINDIAMETER:
        worst = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                if lab[i] == lab[j] and v[i, j] > worst:
                    worst = v[i, j]
        return worst

    if objective == C_KCENTER:
        worst = 0.0
        for c in range(k):
            radius = -1.0
            for e in range(n):
                if lab[e] != c:
                    continue
                s = 0.0
                for i in range(n):
                    if lab[i] == c and v[i, e] > s:
                        s = v[i, e]
                if radius < 0.0 or s < radius:
                    radius = s
            if radius > worst:
                worst = radius
        return worst

    # ratio-cut
    for c in range(k):
        cw[c] = 0.0
        acc[c] = 0.0
        comp[c] = 0.0
    for i in range(n):
        cw[lab[i]] += w[i]
    for i in range(n):
        c = lab[i]
        for j in range(n):
            if lab[j] != c:
                term = v[i, j] * w[i] * w[j] - comp[c]
                t = acc[c] + term
                comp[c] = (t - acc[c]) - term
                acc[c] = t
    total = 0.0
    for c in range(k):
        total += acc[c] / cw[c]
    return 0.5 * total


def evaluate(values, weights, labels, int k, int objective):
    """Cost of one partition; matches the pure kernel."""
    cdef cnp.ndarray[double, ndim=2] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[long, ndim=1] lab = np.ascontiguousarray(labels, dtype=np.int64)
    cdef int n = w.shape[0]
    cdef cnp.ndarray[double, ndim=1] cw = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] acc = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] comp = np.empty(k, dtype=np.float64)
    return _evaluate(v, w, lab, n, k, objective,
                     &cw[0], &acc[0], &comp[0])


def minimize(values, weights, int k, int objective, double tie_rel=1e-9):
    """Cost-minimal k-partition; first in canonical order among relative ties."""
    cdef cnp.ndarray[double, ndim=2] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int n = w.shape[0]
    if not 1 < k < n:
        raise ValueError("need 1 < k < n")

    cdef cnp.ndarray[long, ndim=1] lab = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[long, ndim=1] pmax = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[long, ndim=1] best = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] cw = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] acc = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] comp = np.empty(k, dtype=np.float64)

    cdef long[:] a = lab
    cdef long[:] m = pmax  # m[i] = max(a[0..i-1]); m[0] unused
    cdef int i, j
    cdef long cand, used
    cdef double cost, best_cost
    cdef bint first = True, advanced

    # lexicographically smallest RGS with exactly k labels:
    # zeros, then the forced tail 1, 2, .., k-1
    for i in range(n):
        a[i] = 0 if i < n - (k - 1) else i - (n - k)
    m[0] = 0
    for i in range(1, n):
        m[i] = a[i - 1] if a[i - 1] > m[i - 1] else m[i - 1]

    best_cost = 0.0
    while True:
        cost = _evaluate(v, w, a, n, k, objective, &cw[0], &acc[0], &comp[0])
        if first or best_cost - cost > tie_rel * best_cost:
            best_cost = cost
            for i in range(n):
                best[i] = a[i]
            first = False

        # advance to the next RGS with exactly k labels
        advanced = False
        for i in range(n - 1, 0, -1):
            cand = a[i] + 1
            if cand > m[i] + 1 or cand > k - 1:
                continue
            used = (m[i] if m[i] > cand else cand) + 1
            if used + (n - 1 - i) < k:
                continue
            a[i] = cand
            for j in range(i + 1, n):
                m[j] = a[j - 1] if a[j - 1] > m[j - 1] else m[j - 1]
                used = m[j] + 1
                # force new labels once the remaining slots are all needed
                if k - used == n - j:
                    a[j] = used
                else:
                    a[j] = 0
            advanced = True
            break
        if not advanced:
            break

    return best_cost, best

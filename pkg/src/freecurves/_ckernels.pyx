# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the functions in _pykernels (same signatures)."""
import heapq
from libc.stdlib cimport malloc, realloc, free

BACKEND = "cython"


def box_filter(lo, hi, rows, rhs):
    cdef Py_ssize_t n = len(lo), m = len(rows)
    cdef Py_ssize_t i, k
    cdef long long v
    if n == 0:
        return [()] if all(0 >= r for r in rhs) else []
    for k in range(n):
        if lo[k] > hi[k]:
            return []
    cdef long long *A = <long long *> malloc(sizeof(long long) * (m * n + 1))
    cdef long long *B = <long long *> malloc(sizeof(long long) * (m + 1))
    cdef long long *best = <long long *> malloc(sizeof(long long) * ((n + 1) * m + 1))
    cdef long long *acc = <long long *> malloc(sizeof(long long) * (m + 1))
    cdef long long *L = <long long *> malloc(sizeof(long long) * n)
    cdef long long *H = <long long *> malloc(sizeof(long long) * n)
    cdef long long *x = <long long *> malloc(sizeof(long long) * n)
    cdef long long a, t1, t2
    cdef bint ok
    out = []
    try:
        for k in range(n):
            L[k] = lo[k]
            H[k] = hi[k]
        for i in range(m):
            B[i] = rhs[i]
            acc[i] = 0
            best[n * m + i] = 0
            for k in range(n):
                A[i * n + k] = rows[i][k]
        for k in range(n - 1, -1, -1):
            for i in range(m):
                a = A[i * n + k]
                t1 = a * L[k]
                t2 = a * H[k]
                best[k * m + i] = best[(k + 1) * m + i] + (t1 if t1 > t2 else t2)
        # iterative odometer: x[k] is the next value to try at depth k
        k = 0
        x[0] = L[0]
        while k >= 0:
            if x[k] > H[k]:
                k -= 1
                if k >= 0:
                    for i in range(m):
                        acc[i] -= A[i * n + k] * x[k]
                    x[k] += 1
                continue
            v = x[k]
            ok = True
            for i in range(m):
                if acc[i] + A[i * n + k] * v + best[(k + 1) * m + i] < B[i]:
                    ok = False
                    break
            if not ok:
                x[k] += 1
                continue
            if k == n - 1:
                out.append(tuple([x[j] for j in range(n)]))
                x[k] += 1
                continue
            for i in range(m):
                acc[i] += A[i * n + k] * v
            k += 1
            x[k] = L[k]
    finally:
        free(A); free(B); free(best); free(acc); free(L); free(H); free(x)
    return out


cdef inline bint _conf_le(long long *g, long long *s, Py_ssize_t n) nogil:
    cdef Py_ssize_t i
    cdef long long a, b
    for i in range(n):
        a = g[i]
        if a == 0:
            continue
        b = s[i]
        if a > 0:
            if b < a:
                return False
        else:
            if b > a:
                return False
    return True


def graver_completion(basis):
    if not basis:
        return []
    cdef Py_ssize_t n = len(basis[0])
    cdef Py_ssize_t cap = 1024, size = 0, i, j, nsum
    cdef long long *G = <long long *> malloc(sizeof(long long) * cap * n)
    cdef long long *norms = <long long *> malloc(sizeof(long long) * cap)
    cdef long long *s = <long long *> malloc(sizeof(long long) * n)
    cdef long long ns, a, b
    cdef bint compatible, found
    seen = set()
    queue = []
    try:
        def add(vec):
            nonlocal size, cap, G, norms
            if size == cap:
                cap *= 2
                G = <long long *> realloc(G, sizeof(long long) * cap * n)
                norms = <long long *> realloc(norms, sizeof(long long) * cap)
            for k in range(n):
                G[size * n + k] = vec[k]
            norms[size] = sum(abs(t) for t in vec)
            size += 1

        def push_sums(Py_ssize_t idx, Py_ssize_t upto):
            cdef Py_ssize_t jj, kk
            cdef long long aa, bb
            cdef bint comp
            for jj in range(upto):
                comp = True
                for kk in range(n):
                    aa = G[idx * n + kk]
                    bb = G[jj * n + kk]
                    if aa * bb < 0:
                        comp = False
                        break
                if comp:
                    continue
                vec = tuple([G[idx * n + kk] + G[jj * n + kk] for kk in range(n)])
                heapq.heappush(queue, (sum(abs(t) for t in vec), vec))

        for vec in basis:
            for v in (tuple(vec), tuple(-t for t in vec)):
                if any(v) and v not in seen:
                    seen.add(v)
                    add(v)
        for i in range(size):
            push_sums(i, i)
        while queue:
            ns, vec = heapq.heappop(queue)
            for j in range(n):
                s[j] = vec[j]
            while ns:
                found = False
                for j in range(size):
                    if norms[j] <= ns and _conf_le(G + j * n, s, n):
                        for i in range(n):
                            s[i] -= G[j * n + i]
                        ns -= norms[j]
                        found = True
                        break
                if not found:
                    break
            if ns == 0:
                continue
            t = tuple([s[j] for j in range(n)])
            if t in seen:
                continue
            seen.add(t)
            add(t)
            push_sums(size - 1, size - 1)
        out = []
        for i in range(size):
            found = False
            for j in range(size):
                if j != i and norms[j] <= norms[i] and _conf_le(G + j * n, G + i * n, n):
                    found = True
                    break
            if not found:
                out.append(tuple([G[i * n + k] for k in range(n)]))
        return out
    finally:
        free(G); free(norms); free(s)


def multisets_by_degree(degrees, max_degree):
    cdef Py_ssize_t n = len(degrees), k
    if n == 0:
        return [()]
    cdef long long *d = <long long *> malloc(sizeof(long long) * n)
    cdef long long *x = <long long *> malloc(sizeof(long long) * n)
    cdef long long *budget = <long long *> malloc(sizeof(long long) * (n + 1))
    out = []
    try:
        for k in range(n):
            d[k] = degrees[k]
            x[k] = 0
        budget[0] = max_degree
        k = 0
        while k >= 0:
            if k == n:
                out.append(tuple([x[j] for j in range(n)]))
                k -= 1
                x[k] += 1
                continue
            if x[k] * d[k] > budget[k]:
                x[k] = 0
                k -= 1
                if k >= 0:
                    x[k] += 1
                continue
            budget[k + 1] = budget[k] - x[k] * d[k]
            k += 1
        return out
    finally:
        free(d); free(x); free(budget)

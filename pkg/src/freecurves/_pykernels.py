"""Pure-Python implementations of the hot loops.

These are the reference versions; ``_ckernels`` (Cython) mirrors them
function for function.  Both return plain lists of tuples of ints.
"""
import heapq

BACKEND = "python"


def box_filter(lo, hi, rows, rhs):
    """All integer points x with lo <= x <= hi and rows . x >= rhs.

    Depth-first over coordinates, pruning a prefix as soon as some
    inequality cannot be met by any completion inside the box.  Points come
    out in lexicographic order.
    """
    n = len(lo)
    m = len(rows)
    if any(l > h for l, h in zip(lo, hi)):
        return []
    # best[k][i]: largest value the tail coordinates k.. can add to row i
    best = [[0] * m for _ in range(n + 1)]
    for k in range(n - 1, -1, -1):
        for i in range(m):
            a = rows[i][k]
            best[k][i] = best[k + 1][i] + max(a * lo[k], a * hi[k])
    out = []
    x = [0] * n
    acc = [0] * m

    def rec(k):
        if k == n:
            for i in range(m):
                if acc[i] < rhs[i]:
                    return
            out.append(tuple(x))
            return
        tail = best[k + 1]
        for v in range(lo[k], hi[k] + 1):
            ok = True
            for i in range(m):
                if acc[i] + rows[i][k] * v + tail[i] < rhs[i]:
                    ok = False
                    break
            if not ok:
                continue
            x[k] = v
            for i in range(m):
                acc[i] += rows[i][k] * v
            rec(k + 1)
            for i in range(m):
                acc[i] -= rows[i][k] * v

    rec(0)
    return out


def _conformal_le(g, s):
    for a, b in zip(g, s):
        if a == 0:
            continue
        if a * b <= 0 or abs(a) > abs(b):
            return False
    return True


def graver_completion(basis):
    """Graver basis of the lattice spanned by ``basis`` (a Z-basis).

    Completion procedure: starting from +-basis, repeatedly add the
    normal form (w.r.t. conformal reduction) of pairwise sums, processed in
    order of increasing 1-norm, until nothing new appears.  The conformally
    minimal survivors are the Graver basis; both signs are returned.
    """
    G = []
    norms = []
    seen = set()
    for b in basis:
        for v in (tuple(b), tuple(-x for x in b)):
            if any(v) and v not in seen:
                seen.add(v)
                G.append(v)
                norms.append(sum(map(abs, v)))
    queue = []

    def push_sums(f, upto):
        for j in range(upto):
            g = G[j]
            s = tuple(a + b for a, b in zip(f, g))
            if not any(s):
                continue
            # sums of sign-compatible vectors reduce to zero
            if all(a * b >= 0 for a, b in zip(f, g)):
                continue
            heapq.heappush(queue, (sum(map(abs, s)), s))

    for i in range(len(G)):
        push_sums(G[i], i)
    while queue:
        ns, s = heapq.heappop(queue)
        s = list(s)
        while ns:
            for j in range(len(G)):
                if norms[j] <= ns and _conformal_le(G[j], s):
                    g = G[j]
                    s = [a - b for a, b in zip(s, g)]
                    ns -= norms[j]
                    break
            else:
                break
        if ns == 0:
            continue
        t = tuple(s)
        if t in seen:
            continue
        seen.add(t)
        push_sums(t, len(G))
        G.append(t)
        norms.append(ns)
    return [g for i, g in enumerate(G)
            if not any(j != i and norms[j] <= norms[i] and _conformal_le(G[j], g)
                       for j in range(len(G)))]


def multisets_by_degree(degrees, max_degree):
    """All count vectors x >= 0 with sum x_i * degrees[i] <= max_degree.

    Every degree must be positive.
    """
    n = len(degrees)
    out = []
    x = [0] * n

    def rec(k, budget):
        if k == n:
            out.append(tuple(x))
            return
        d = degrees[k]
        for c in range(budget // d + 1):
            x[k] = c
            rec(k + 1, budget - c * d)
        x[k] = 0

    rec(0, max_degree)
    return out

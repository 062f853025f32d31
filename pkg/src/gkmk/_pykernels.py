"""Pure-Python sparse term kernels.

A term map is a ``dict`` from exponent tuples to nonzero coefficients.  The
coefficients may be any ring elements supporting ``+``, ``-``, ``*`` and
truthiness (ints, Fractions, cyclotomic integers).
"""

import heapq


def mul(a, b):
    """Product of two term maps."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            key = tuple([x + y for x, y in zip(ea, eb)])
            c = get(key)
            out[key] = ca * cb if c is None else c + ca * cb
    return {k: v for k, v in out.items() if v}


def axpy(acc, b, coeff, shift=None):
    """In place ``acc += coeff * x**shift * b``; zero terms are removed."""
    for eb, cb in b.items():
        key = eb if shift is None else tuple([x + y for x, y in zip(eb, shift)])
        c = acc.get(key)
        v = coeff * cb if c is None else c + coeff * cb
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return acc


def linear_map(a, mat):
    """Send every exponent row vector ``e`` to ``e @ mat`` and merge terms."""
    cols = range(len(mat[0])) if mat else range(0)
    out = {}
    for e, c in a.items():
        key = tuple([sum(e[i] * mat[i][j] for i in range(len(e))) for j in cols])
        v = out.get(key)
        out[key] = c if v is None else v + c
    return {k: v for k, v in out.items() if v}


def divide(f, g, quo):
    """Exact division of term maps under the lex group order.

    ``quo(c, d)`` divides coefficients and returns ``None`` when ``d`` does not
    divide ``c``.  Returns ``(q, None)`` on success or ``(None, remainder)``.
    """
    if not f:
        return {}, None
    lt_g = max(g)
    lc_g = g[lt_g]
    # Newton polytope of f is the Minkowski sum of those of q and g
    n = len(lt_g)
    lo = [min(e[j] for e in f) - min(e[j] for e in g) for j in range(n)]
    hi = [max(e[j] for e in f) - max(e[j] for e in g) for j in range(n)]
    rem = dict(f)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    q = {}
    while rem:
        while True:
            e = tuple(-x for x in heapq.heappop(heap))
            if e in rem:
                break
        d = tuple(x - y for x, y in zip(e, lt_g))
        if any(d[j] < lo[j] or d[j] > hi[j] for j in range(n)):
            return None, rem
        c = quo(rem[e], lc_g)
        if c is None:
            return None, rem
        q[d] = c
        for eg, cg in g.items():
            key = tuple([x + y for x, y in zip(eg, d)])
            old = rem.get(key)
            if old is None:
                rem[key] = -c * cg
                heapq.heappush(heap, tuple(-x for x in key))
            else:
                v = old - c * cg
                if v:
                    rem[key] = v
                else:
                    del rem[key]
    return q, None

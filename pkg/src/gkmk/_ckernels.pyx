# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse term kernels; same contract as ``_pykernels``.

Exponent tuples are unpacked into C arrays once per call.  Exponents beyond
``_LIMIT`` in absolute value fall back to the pure-Python path so that
arbitrary-precision exponents stay exact.
"""

from cpython.long cimport PyLong_FromLongLong
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport free, malloc

from . import _pykernels

cdef long long _LIMIT = 1LL << 40


cdef long long* _unpack(list keys, Py_ssize_t n, bint* ok):
    cdef Py_ssize_t m = len(keys), i, j
    cdef long long* buf = <long long*> malloc((m * n + 1) * sizeof(long long))
    cdef long long v
    if buf == NULL:
        raise MemoryError()
    ok[0] = True
    for i in range(m):
        key = keys[i]
        for j in range(n):
            obj = key[j]
            if not (-_LIMIT < obj < _LIMIT):
                ok[0] = False
                free(buf)
                return NULL
            v = obj
            buf[i * n + j] = v
    return buf


cdef inline tuple _pack(long long* src, Py_ssize_t n):
    cdef tuple t = PyTuple_New(n)
    cdef Py_ssize_t j
    for j in range(n):
        o = PyLong_FromLongLong(src[j])
        Py_INCREF(o)
        PyTuple_SET_ITEM(t, j, o)
    return t


def mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef list ka = list(a.keys()), kb = list(b.keys())
    cdef list ca = list(a.values()), cb = list(b.values())
    cdef Py_ssize_t n = len(ka[0]), na = len(ka), nb = len(kb), i, j, t
    cdef bint ok1, ok2
    cdef long long* ea = _unpack(ka, n, &ok1)
    if not ok1:
        return _pykernels.mul(a, b)
    cdef long long* eb = _unpack(kb, n, &ok2)
    if not ok2:
        free(ea)
        return _pykernels.mul(a, b)
    cdef long long* tmp = <long long*> malloc((n + 1) * sizeof(long long))
    cdef dict out = {}
    cdef object key, c, cbj
    try:
        for j in range(nb):
            cbj = cb[j]
            for i in range(na):
                for t in range(n):
                    tmp[t] = ea[i * n + t] + eb[j * n + t]
                key = _pack(tmp, n)
                c = out.get(key)
                if c is None:
                    out[key] = ca[i] * cbj
                else:
                    out[key] = c + ca[i] * cbj
    finally:
        free(ea)
        free(eb)
        free(tmp)
    return {k: v for k, v in out.items() if v}


def axpy(dict acc, dict b, coeff, shift=None):
    if not b:
        return acc
    if shift is None:
        for key, cbj in b.items():
            c = acc.get(key)
            v = coeff * cbj if c is None else c + coeff * cbj
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        return acc
    cdef list kb = list(b.keys()), cb = list(b.values())
    cdef Py_ssize_t n = len(kb[0]), nb = len(kb), j, t
    cdef bint ok1, ok2
    cdef long long* eb = _unpack(kb, n, &ok1)
    if not ok1:
        return _pykernels.axpy(acc, b, coeff, shift)
    cdef long long* sh = _unpack([shift], n, &ok2)
    if not ok2:
        free(eb)
        return _pykernels.axpy(acc, b, coeff, shift)
    cdef long long* tmp = <long long*> malloc((n + 1) * sizeof(long long))
    try:
        for j in range(nb):
            for t in range(n):
                tmp[t] = eb[j * n + t] + sh[t]
            key = _pack(tmp, n)
            c = acc.get(key)
            v = coeff * cb[j] if c is None else c + coeff * cb[j]
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    finally:
        free(eb)
        free(sh)
        free(tmp)
    return acc


def linear_map(dict a, mat):
    if not a:
        return {}
    cdef list ka = list(a.keys()), ca = list(a.values())
    cdef Py_ssize_t n = len(mat), m = len(mat[0]) if mat else 0, na = len(ka), i, r, s
    cdef bint ok1, ok2
    cdef long long* ea = _unpack(ka, n, &ok1)
    if not ok1:
        return _pykernels.linear_map(a, mat)
    cdef long long* mm = _unpack([tuple(x for row in mat for x in row)], n * m, &ok2)
    if not ok2:
        free(ea)
        return _pykernels.linear_map(a, mat)
    cdef long long* tmp = <long long*> malloc((m + 1) * sizeof(long long))
    cdef long long acc
    cdef dict out = {}
    try:
        for i in range(na):
            for s in range(m):
                acc = 0
                for r in range(n):
                    acc += ea[i * n + r] * mm[r * m + s]
                tmp[s] = acc
            key = _pack(tmp, m)
            c = out.get(key)
            out[key] = ca[i] if c is None else c + ca[i]
    finally:
        free(ea)
        free(mm)
        free(tmp)
    return {k: v for k, v in out.items() if v}


def divide(dict f, dict g, quo):
    # the division loop is dominated by axpy; reuse the compiled one
    if not f:
        return {}, None
    import heapq
    lt_g = max(g)
    lc_g = g[lt_g]
    cdef Py_ssize_t n = len(lt_g), j
    lo = [min(e[j] for e in f) - min(e[j] for e in g) for j in range(n)]
    hi = [max(e[j] for e in f) - max(e[j] for e in g) for j in range(n)]
    rem = dict(f)
    heap = [tuple([-x for x in e]) for e in rem]
    heapq.heapify(heap)
    q = {}
    while rem:
        while True:
            e = tuple([-x for x in heapq.heappop(heap)])
            if e in rem:
                break
        d = tuple([e[j] - lt_g[j] for j in range(n)])
        for j in range(n):
            if d[j] < lo[j] or d[j] > hi[j]:
                return None, rem
        c = quo(rem[e], lc_g)
        if c is None:
            return None, rem
        q[d] = c
        for eg in g:
            key = tuple([eg[j] + d[j] for j in range(n)])
            if key not in rem:
                heapq.heappush(heap, tuple([-x for x in key]))
        axpy(rem, g, -c, d)
    return q, None

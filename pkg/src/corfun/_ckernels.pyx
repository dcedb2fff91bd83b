# cython: boundscheck=False, wraparound=False
"""Compiled versions of the hot loops in _pykernels (bitmasks fit in 63 bits)."""


def compose_rows(r_rows, s_rows):
    try:
        return _compose_rows(r_rows, s_rows)
    except OverflowError:
        from ._pykernels import compose_rows as slow
        return slow(r_rows, s_rows)


def _compose_rows(r_rows, s_rows):
    cdef Py_ssize_t y
    cdef unsigned long long r, acc
    out = []
    for rr in r_rows:
        r = rr
        acc = 0
        y = 0
        while r:
            if r & 1:
                acc |= <unsigned long long>s_rows[y]
            r >>= 1
            y += 1
        out.append(acc)
    return tuple(out)


def compose_terms(dict u, dict v):
    cdef dict out = {}
    cdef tuple f, g, h
    cdef Py_ssize_t i, m
    for f, a in u.items():
        for g, b in v.items():
            m = len(g)
            h = tuple([f[<Py_ssize_t>g[i]] for i in range(m)])
            c = out.get(h, 0) + a * b
            if c:
                out[h] = c
            else:
                out.pop(h, None)
    return out


def join_action(rows, tuple phi, join, Py_ssize_t bottom):
    cdef Py_ssize_t acc, x
    cdef unsigned long long r
    if len(phi) > 63:
        from ._pykernels import join_action as slow
        return slow(rows, phi, join, bottom)
    out = []
    for rr in rows:
        r = rr
        acc = bottom
        x = 0
        while r:
            if r & 1:
                acc = join[acc][phi[x]]
            r >>= 1
            x += 1
        out.append(acc)
    return tuple(out)


def vdash_rows(tuple phi, tuple psi, down_on_e, Py_ssize_t n_e):
    cdef Py_ssize_t x, e
    cdef unsigned long long p, d
    if n_e > 63:
        from ._pykernels import vdash_rows as slow
        return slow(phi, psi, down_on_e, n_e)
    rows = [0] * n_e
    for x in range(len(phi)):
        p = psi[x]
        d = down_on_e[phi[x]]
        e = 0
        while p:
            if p & 1:
                rows[e] = rows[e] | d
            p >>= 1
            e += 1
    return rows

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernels; same contract as ``_pykernels``."""

from ..scalars.poly import cdiv

IMPLEMENTATION = "cython"


cdef inline int _cmp(tuple a, tuple b):
    # grevlex comparison: 1 if a > b, -1 if a < b, 0 if equal
    cdef Py_ssize_t n = len(a), i
    cdef long da = 0, db = 0, x, y
    for i in range(n):
        da += <long>a[i]
        db += <long>b[i]
    if da != db:
        return 1 if da > db else -1
    for i in range(n - 1, -1, -1):
        x = <long>a[i]
        y = <long>b[i]
        if x != y:
            return 1 if x < y else -1
    return 0


cdef inline bint _divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] + <long>b[i]
    return tuple(out)


cdef inline tuple _sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] - <long>b[i]
    return tuple(out)


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


cdef tuple _leading(dict f):
    cdef tuple best = None
    cdef tuple e
    for e in f:
        if best is None or _cmp(e, best) > 0:
            best = e
    return best


def leading_exponent(f):
    return _leading(f)


def divides(tuple a, tuple b):
    return _divides(a, b)


def lcm(tuple a, tuple b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def spoly(tuple fl, dict f, tuple gl, dict g):
    cdef tuple m = lcm(fl, gl)
    cdef tuple qf = _sub(m, fl)
    cdef tuple qg = _sub(m, gl)
    cdef dict out = {}
    cdef tuple e, k
    for e, c in f.items():
        if e != fl:
            out[_add(e, qf)] = c
    for e, c in g.items():
        if e == gl:
            continue
        k = _add(e, qg)
        v = out.get(k, 0) - c
        if v == 0:
            out.pop(k, None)
        else:
            out[k] = v
    return out


def normal_form(dict f, list basis):
    cdef dict p = dict(f)
    cdef dict rem = {}
    cdef dict g
    cdef tuple e, le, q, ge, m
    cdef bint reduced
    while p:
        e = _leading(p)
        c = p.pop(e)
        reduced = False
        for le, g in basis:
            if _divides(le, e):
                q = _sub(e, le)
                for ge, gc in g.items():
                    if ge == le:
                        continue
                    m = _add(ge, q)
                    v = p.get(m, 0) - c * gc
                    if v == 0:
                        p.pop(m, None)
                    else:
                        p[m] = v
                reduced = True
                break
        if not reduced:
            rem[e] = c
    return rem


def make_monic(dict f):
    cdef tuple e = _leading(f)
    c = f[e]
    if c == 1:
        return e, f
    inv = cdiv(1, c)
    return e, {k: v * inv for k, v in f.items()}

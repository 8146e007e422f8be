"""Pure-Python reduction kernels (fallback for the compiled ``_ckernels``).

Polynomials here are plain dicts ``{exponent tuple: coefficient}`` over a fixed
generator list; the monomial order is graded reverse lexicographic.
"""

from ..scalars.poly import cdiv

IMPLEMENTATION = "python"


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def leading_exponent(f):
    return max(f, key=grevlex_key)


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def spoly(fl, f, gl, g):
    """S-polynomial of f and g given their leading exponents (coefficients monic)."""
    m = lcm(fl, gl)
    qf = tuple(x - y for x, y in zip(m, fl))
    qg = tuple(x - y for x, y in zip(m, gl))
    out = {}
    for e, c in f.items():
        if e != fl:
            out[tuple(x + y for x, y in zip(e, qf))] = c
    for e, c in g.items():
        if e == gl:
            continue
        k = tuple(x + y for x, y in zip(e, qg))
        v = out.get(k, 0) - c
        if v == 0:
            out.pop(k, None)
        else:
            out[k] = v
    return out


def normal_form(f, basis):
    """Fully reduce ``f`` by ``basis`` = [(lead exponent, monic poly dict), ...]."""
    p = dict(f)
    rem = {}
    while p:
        e = max(p, key=grevlex_key)
        c = p.pop(e)
        for le, g in basis:
            if divides(le, e):
                q = tuple(x - y for x, y in zip(e, le))
                for ge, gc in g.items():
                    if ge == le:
                        continue
                    m = tuple(x + y for x, y in zip(ge, q))
                    v = p.get(m, 0) - c * gc
                    if v == 0:
                        p.pop(m, None)
                    else:
                        p[m] = v
                break
        else:
            rem[e] = c
    return rem


def make_monic(f):
    e = max(f, key=grevlex_key)
    c = f[e]
    if c == 1:
        return e, f
    inv = cdiv(1, c)
    return e, {k: v * inv for k, v in f.items()}

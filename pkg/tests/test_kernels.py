import random
from fractions import Fraction

import pytest

from algvar._kernels import IMPLEMENTATION, _pykernels

try:
    from algvar._kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def random_poly(rng, nvars=3, terms=5, deg=3):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(nvars))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if c:
            out[e] = c
    return out or {(0,) * nvars: Fraction(1)}


def test_implementation_name():
    assert IMPLEMENTATION in ("cython", "python")


def test_grevlex_order():
    k = _pykernels.grevlex_key
    # x*z < y^2 under grevlex with x > y > z
    assert k((1, 0, 1)) < k((0, 2, 0))
    assert k((2, 0, 0)) > k((1, 1, 0)) > k((0, 2, 0))


@needs_ext
def test_kernels_agree():
    rng = random.Random(41)
    for _ in range(200):
        f, g, h = (random_poly(rng) for _ in range(3))
        fl, fm = _pykernels.make_monic(f)
        assert (fl, fm) == _ckernels.make_monic(f)
        gl, gm = _pykernels.make_monic(g)
        assert _pykernels.spoly(fl, fm, gl, gm) == _ckernels.spoly(fl, fm, gl, gm)
        basis = [(fl, fm), (gl, gm)]
        assert _pykernels.normal_form(h, basis) == _ckernels.normal_form(h, basis)
        assert _pykernels.lcm(fl, gl) == _ckernels.lcm(fl, gl)
        assert _pykernels.divides(fl, gl) == _ckernels.divides(fl, gl)
        assert _pykernels.leading_exponent(h) == _ckernels.leading_exponent(h)


def test_normal_form_remainder_is_reduced():
    rng = random.Random(3)
    for _ in range(50):
        basis = [_pykernels.make_monic(random_poly(rng)) for _ in range(2)]
        rem = _pykernels.normal_form(random_poly(rng), basis)
        for e in rem:
            assert not any(_pykernels.divides(le, e) for le, _ in basis)


def test_pure_python_fallback_runs():
    import os
    import subprocess
    import sys

    code = ("from algvar._kernels import IMPLEMENTATION\n"
            "from algvar.catalog import catalog_get\n"
            "from algvar.invariants import max_null_subspace_dim\n"
            "print(IMPLEMENTATION, max_null_subspace_dim(catalog_get('C5_76'), 3).verdict)\n")
    env = dict(os.environ, ALGVAR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["python", "No"], out.stderr

"""Smoke test for the rydberg_renyi_py extension module.

Imports the installed module, or falls back to the shared library left in
target/ by `cargo build --release -p rydberg-renyi-py --features extension-module`.
Values are checked against scipy where it has an equivalent.
"""

import importlib.util
import math
import pathlib
import sys

import numpy as np
from scipy import special


def load():
    try:
        import rydberg_renyi_py

        return rydberg_renyi_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("librydberg_renyi_py.so", "librydberg_renyi_py.dylib", "rydberg_renyi_py.dll"):
            path = root / "target" / profile / name
            if path.exists():
                spec = importlib.util.spec_from_file_location("rydberg_renyi_py", path)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("rydberg_renyi_py not found; build it first (see README)")


rr = load()


def close(a, b, rel):
    assert abs(a - b) <= rel * max(abs(b), 1e-300), (a, b)


def special_functions():
    for x in (0.3, 2.5, 17.0, 140.0):
        close(rr.log_gamma(x), math.lgamma(x), 1e-13)
    for nu, x in ((0.5, 3.3), (2.0, 11.0), (7.5, 40.0)):
        close(rr.bessel_j(nu, x), special.jv(nu, x), 1e-10)
    close(rr.airy_ai(-1.7), special.airy(-1.7)[0], 1e-10)
    close(rr.airy_ai_zero(1), special.ai_zeros(1)[0][0], 1e-12)


def laguerre():
    n, alpha, x = 50, 0.5, 3.5
    params = rr.LaguerreParams(n, alpha)
    norm_sq = math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n + 1))
    want = special.eval_genlaguerre(n, alpha, x) * math.sqrt(x**alpha * math.exp(-x) / norm_sq)
    close(params.weighted(x), want, 1e-9)
    close(params.big_n, n + (alpha + 1) / 2, 1e-15)
    zeros = rr.LaguerreParams(20, 0.5).zeros()
    assert np.allclose(zeros, special.roots_genlaguerre(20, 0.5)[0], rtol=1e-10)


def norms_and_entropy():
    spec = rr.NormSpec(0, 0, 3.0, 2.0)
    exact = spec.exact()
    assert exact.certified
    s = 2 * spec.alpha + spec.beta + 1
    close(exact.value, math.gamma(s) * 2 ** (-s) / math.gamma(spec.alpha + 1) ** 2, 1e-10)
    assert rr.NormSpec(50, 0, 4.0, 2.0).regime().exponent == 0.0

    state = rr.OscillatorState(50, 0, 4.0)
    diseq = state.disequilibrium("asymptotic")
    assert abs(diseq.value - 0.4053) < 5e-4 and diseq.caveat == "1+o(1)"
    power = state.renyi_power(2.0, "exact")
    close(power.value * state.disequilibrium("exact").value, 1.0, 1e-12)
    close(rr.OscillatorState(5, 1, 3.0, lam=2.0).radial_normalization().value, 1.0, 1e-8)


def constants_and_errors():
    close(rr.cosine_constant(0.0, 1.0), 1.0, 1e-12)
    close(rr.bessel_constant(0.5, -0.5, 2.0), 1 / math.pi, 1e-9)
    try:
        rr.airy_constant(2.0)
    except rr.DivergenceError as e:
        assert "p > 2" in str(e)
    else:
        raise AssertionError("C_A(2) must diverge")
    try:
        rr.OscillatorState(5, 0, 3.0).renyi_entropy(1.0)
    except rr.DomainError:
        pass
    else:
        raise AssertionError("p = 1 must be rejected")
    assert issubclass(rr.ToleranceError, rr.RydbergRenyiError)


def acceptance():
    rows = rr.verify(fast=True)
    assert len(rows) == 13 and all(status != "FAIL" for _, _, status, _, _ in rows), rows
    failed = rr.verify(only=[12], zones=rr.ZoneConfig(epsilon=0.5))
    assert failed[0][2] == "FAIL"


if __name__ == "__main__":
    for check in (special_functions, laguerre, norms_and_entropy, constants_and_errors, acceptance):
        check()
        print(f"ok  {check.__name__}")
    print("smoke test passed")

"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is taken from a real call site: the nef-class enumeration of
5.1, the relation oracle of 4.13 and the Graver completion for 2.4.
"""
import argparse
import statistics
import sys
import timeit

from freecurves import _linalg as la
from freecurves import _pykernels
from freecurves.cones import extreme_rays
from freecurves.enumerate import DegreeWindow, _box
from freecurves.familydb import load_family

try:
    from freecurves import _ckernels
except ImportError:
    _ckernels = None


def _box_workload():
    rec = load_family("5.1")
    cone = rec.nef_cone()
    degree = rec.pairing.divisor_functional(rec.anticanonical)
    lo, hi = _box(extreme_rays(cone), degree, 2, 12, 0)
    rows = [list(w) for w in cone.facets] + [list(degree), [-x for x in degree]]
    rhs = [0] * len(cone.facets) + [2, -12]
    return "box_filter (5.1, degree 2..12)", "box_filter", (lo, hi, rows, rhs)


def _multiset_workload():
    rec = load_family("4.13")
    degs = [rec.degree(c) for c in rec.core]
    return "multisets_by_degree (4.13, cap 20)", "multisets_by_degree", (degs, 20)


def _graver_workload():
    rec = load_family("2.4")
    rows = la.transpose([c.coords for c in rec.core])
    basis = la.integer_kernel(rows, len(rec.core))
    return "graver_completion (2.4)", "graver_completion", (basis,)


def _time(fn, args, repeat):
    runs = timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)
    return statistics.median(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the Python timings are shown")
    print(f"{'workload':<40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, attr, wargs in (_box_workload(), _multiset_workload(), _graver_workload()):
        py = getattr(_pykernels, attr)
        t_py = _time(py, wargs, args.repeat)
        if _ckernels is None:
            print(f"{name:<40} {t_py * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
            continue
        c = getattr(_ckernels, attr)
        if sorted(c(*wargs)) != sorted(py(*wargs)):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_c = _time(c, wargs, args.repeat)
        print(f"{name:<40} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

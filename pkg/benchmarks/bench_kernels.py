#!/usr/bin/env python
"""Benchmark the compiled accumulation kernels against the pure-numpy twins.

The workloads mirror what the verification suites actually run: streaming
Kraus multi-index expansions of the cyclic switch and of single cross-order
terms.  Results of both backends are compared entrywise before timing.
"""

import argparse
import time

import numpy as np

from switchsim import _kernels_py
from switchsim import channels as ch
from switchsim.switch import cyclic_perms, uniform_ket

try:
    from switchsim import _kernels
except ImportError:
    _kernels = None


def switch_workload(n, d):
    dep = ch.completely_depolarizing(d)
    ops = np.ascontiguousarray(np.concatenate([np.stack(dep.kraus)] * n))
    counts = [len(dep.kraus)] * n
    offsets = np.zeros(n + 1, dtype=np.intp)
    np.cumsum(counts, out=offsets[1:])
    perms = np.array(cyclic_perms(n).perms, dtype=np.intp)
    ctrl = np.ascontiguousarray(uniform_ket(n).reshape(1, n))
    size = n * d * d
    args = (ops, offsets, np.array(counts, dtype=np.intp), perms, perms.copy(), ctrl)
    return "accumulate_switch_choi", args, (size, size)


def pair_workload(n, d):
    dep = ch.completely_depolarizing(d)
    ops = np.ascontiguousarray(np.concatenate([np.stack(dep.kraus)] * n))
    counts = [len(dep.kraus)] * n
    offsets = np.zeros(n + 1, dtype=np.intp)
    np.cumsum(counts, out=offsets[1:])
    perms = cyclic_perms(n).perms
    a = np.array(perms[0], dtype=np.intp)
    b = np.array(perms[1], dtype=np.intp)
    args = (ops, offsets, np.array(counts, dtype=np.intp), a, a.copy(), b, b.copy())
    return "accumulate_pair_choi", args, (d * d, d * d)


def run(kernel_module, fn_name, args, out_shape, repeat):
    fn = getattr(kernel_module, fn_name)
    best = np.inf
    out = None
    for _ in range(repeat):
        out = np.zeros(out_shape, dtype=np.complex128)
        t0 = time.perf_counter()
        fn(*args, out)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="best-of timing repeats")
    opts = parser.parse_args()

    workloads = [
        ("switch N=4 d=2 (256 terms)", switch_workload(4, 2)),
        ("switch N=5 d=2 (1024 terms)", switch_workload(5, 2)),
        ("switch N=3 d=3 (729 terms)", switch_workload(3, 3)),
        ("cross-order N=3 d=3 (729 terms)", pair_workload(3, 3)),
    ]

    print(f"{'workload':<34} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, (fn_name, args, out_shape) in workloads:
        t_py, out_py = run(_kernels_py, fn_name, args, out_shape, opts.repeat)
        if _kernels is None:
            print(f"{label:<34} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_cy, out_cy = run(_kernels, fn_name, args, out_shape, opts.repeat)
        agree = np.max(np.abs(out_py - out_cy))
        assert agree <= 1e-11, f"backend disagreement {agree:.3e} on {label}"
        print(
            f"{label:<34} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>7.1f}x"
        )
    if _kernels is None:
        print("\ncompiled kernel not built; run `python setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()

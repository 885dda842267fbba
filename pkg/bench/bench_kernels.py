#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths (gradient-descent fit, batch logit scoring) on a
synthetic design matrix sized like the packaged demo workload, plus an
end-to-end fit() on generated data under each backend.

Run: python bench/bench_kernels.py [--rows 48000] [--dim 11] [--epochs 500]
"""

import argparse
import importlib
import os
import sys
import time

import numpy as np


def fit_workload(kernels, X, y, epochs):
    t0 = time.perf_counter()
    w, b, losses = kernels.fit_logreg(X, y, 0.1, epochs, 1e-3)
    return time.perf_counter() - t0, w, b


def score_workload(kernels, X, w, b, repeats=50):
    t0 = time.perf_counter()
    for _ in range(repeats):
        kernels.batch_logits(X, w, b)
    return (time.perf_counter() - t0) / repeats


def end_to_end_fit(backend_env):
    """Full riskmonitor.fit in a subprocess-free way: reimport with the
    backend forced through the env switch."""
    os.environ.pop("RISKMONITOR_PURE_PYTHON", None)
    if backend_env:
        os.environ["RISKMONITOR_PURE_PYTHON"] = "1"
    for name in [m for m in sys.modules if m.startswith("riskmonitor")]:
        del sys.modules[name]
    rm = importlib.import_module("riskmonitor")
    schema = rm.default_schema()
    data = rm.gen_synthetic(2000, 7, schema)
    train, test = rm.train_test_split(data, 0.2, 7)
    rm.fit(train, test, (0.1, 20, 1e-3))  # warm caches before timing
    t0 = time.perf_counter()
    model = rm.fit(train, test)
    dt = time.perf_counter() - t0
    return dt, model.metrics[1], rm.KERNEL_BACKEND


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=48000)
    ap.add_argument("--dim", type=int, default=11)
    ap.add_argument("--epochs", type=int, default=500)
    args = ap.parse_args()

    from riskmonitor._kernels import _pykernels
    try:
        from riskmonitor._kernels import _ckernels
    except ImportError:
        _ckernels = None

    rng = np.random.default_rng(0)
    X = rng.normal(size=(args.rows, args.dim))
    w_true = rng.normal(size=args.dim)
    y = (rng.random(args.rows) < 1 / (1 + np.exp(-(X @ w_true)))).astype(float)

    print(f"workload: {args.rows} rows x {args.dim} features, {args.epochs} epochs\n")
    print(f'{"kernel":<26}{"backend":<10}{"seconds":>10}')

    fit_workload(_pykernels, X, y, 20)  # touch pages before timing
    if _ckernels is not None:
        fit_workload(_ckernels, X, y, 20)

    t_py, w_py, b_py = fit_workload(_pykernels, X, y, args.epochs)
    print(f'{"fit_logreg":<26}{"python":<10}{t_py:>10.3f}')
    if _ckernels is not None:
        t_c, w_c, b_c = fit_workload(_ckernels, X, y, args.epochs)
        print(f'{"fit_logreg":<26}{"c":<10}{t_c:>10.3f}   ({t_py / t_c:.1f}x)')
        assert np.allclose(w_c, w_py, atol=1e-9), "backends disagree"

    s_py = score_workload(_pykernels, X, w_py, b_py)
    print(f'{"batch_logits":<26}{"python":<10}{s_py:>10.4f}')
    if _ckernels is not None:
        s_c = score_workload(_ckernels, X, w_py, b_py)
        print(f'{"batch_logits":<26}{"c":<10}{s_c:>10.4f}   ({s_py / s_c:.1f}x)')

    print("\nend-to-end fit() on gen_synthetic(2000) per backend:")
    for force_py in (True, False):
        if force_py or _ckernels is not None:
            dt, acc, backend = end_to_end_fit(force_py)
            print(f"  backend={backend:<8} fit={dt:.2f}s test_acc={acc:.4f}")


if __name__ == "__main__":
    main()

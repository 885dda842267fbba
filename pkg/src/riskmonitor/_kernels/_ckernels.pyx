# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: gradient-descent epochs and batch scoring.

Same contract as _pykernels. Each epoch runs in three flat passes
(logits, probabilities/loss, gradient) over preallocated buffers so the
C compiler can keep them in SIMD; the loss uses the softplus identity
log(1+e^z) - y*z, which is exact and needs no probability clipping.
"""

from libc.math cimport exp, fabs, log

import numpy as np


def fit_logreg(X, y, double lr, int epochs, double l2):
    """Full-batch gradient descent on L2-penalized logistic loss.

    Returns (weights, intercept, losses); losses[k] is the objective at
    the start of epoch k. The intercept is not penalized.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    cdef double[:, ::1] Xv = X
    cdef double[::1] yv = y
    cdef Py_ssize_t n = Xv.shape[0]
    cdef Py_ssize_t d = Xv.shape[1]

    w_arr = np.zeros(d)
    losses_arr = np.empty(epochs)
    cdef double[::1] w = w_arr
    cdef double[::1] losses = losses_arr
    cdef double[::1] grad = np.zeros(d)
    cdef double[::1] z = np.empty(n)
    cdef double[::1] err = np.empty(n)

    cdef double b = 0.0
    cdef double acc, zi, em, inv, gb, loss, reg
    cdef Py_ssize_t i, j, epoch

    for epoch in range(epochs):
        for i in range(n):
            acc = b
            for j in range(d):
                acc += Xv[i, j] * w[j]
            z[i] = acc

        loss = 0.0
        for i in range(n):
            zi = z[i]
            em = exp(-fabs(zi))
            inv = 1.0 / (1.0 + em)
            err[i] = (inv if zi >= 0.0 else em * inv) - yv[i]
            loss += log(1.0 + em) + ((1.0 - yv[i]) * zi if zi >= 0.0 else -yv[i] * zi)

        reg = 0.0
        for j in range(d):
            reg += w[j] * w[j]
        losses[epoch] = loss / n + 0.5 * l2 * reg

        gb = 0.0
        for j in range(d):
            grad[j] = 0.0
        for i in range(n):
            acc = err[i]
            gb += acc
            for j in range(d):
                grad[j] += acc * Xv[i, j]
        for j in range(d):
            w[j] -= lr * (grad[j] / n + l2 * w[j])
        b -= lr * (gb / n)

    return w_arr, b, losses_arr


def batch_logits(X, w, double b):
    X = np.ascontiguousarray(X, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    cdef double[:, ::1] Xv = X
    cdef double[::1] wv = w
    cdef Py_ssize_t n = Xv.shape[0]
    cdef Py_ssize_t d = Xv.shape[1]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = b
        for j in range(d):
            acc += Xv[i, j] * wv[j]
        out[i] = acc
    return out_arr

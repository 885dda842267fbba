"""Pure-Python (numpy) kernel implementations, used when the compiled
extension is unavailable. Semantics must match _ckernels exactly."""

import numpy as np

_CLIP = 1e-12  # keeps log() finite on saturated probabilities


def fit_logreg(X, y, lr, epochs, l2):
    """Full-batch gradient descent on L2-penalized logistic loss.

    Returns (weights, intercept, losses); losses[k] is the objective at
    the start of epoch k, so it is non-increasing for a stable step size.
    The intercept is not penalized.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    losses = np.empty(epochs)
    with np.errstate(over="ignore"):  # exp overflow saturates p, handled by the clip
        for epoch in range(epochs):
            z = X @ w + b
            p = 1.0 / (1.0 + np.exp(-z))
            pc = np.clip(p, _CLIP, 1.0 - _CLIP)
            losses[epoch] = float(
                -np.mean(y * np.log(pc) + (1.0 - y) * np.log(1.0 - pc))
                + 0.5 * l2 * float(w @ w)
            )
            err = p - y
            w -= lr * (X.T @ err / n + l2 * w)
            b -= lr * float(np.mean(err))
    return w, b, losses


def batch_logits(X, w, b):
    X = np.ascontiguousarray(X, dtype=np.float64)
    return X @ np.asarray(w, dtype=np.float64) + b

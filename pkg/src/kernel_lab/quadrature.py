"""Quadrature controls and graded composite Gauss-Legendre panels.

Singular integrands (Green-function masses, the principal-value kernel of
the fractional Laplacian) are handled by composite Gauss-Legendre rules on
meshes graded algebraically toward the singular endpoint; the grading
exponent is chosen by the caller.  Everything is deterministic: fixed node
tables, fixed summation order.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ToleranceError


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy / resolution knobs shared by the singular-integral routines.

    resolution is the panel count of each graded mesh; doubling it is the
    refinement step tested by the convergence suites.  budget caps the
    number of integrand evaluations a single operation may spend.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    resolution: int = 32
    budget: int = 100_000
    gl_order: int = 12
    n_angles: int = 64

    def tolerance_for(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


@lru_cache(maxsize=None)
def _gl_nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def graded_mesh(lo, hi, panels, exponent, toward="lo"):
    """Panel breakpoints on [lo, hi] clustered at one end as (j/m)^exponent.

    Breakpoints closer together than a few ulps are collapsed so that the
    Gauss nodes of the thinnest panel stay strictly clear of the graded
    endpoint in floating point (steep gradings with many panels would
    otherwise produce zero-width panels whose midpoint rounds onto the
    singularity).
    """
    t = (np.arange(panels + 1) / panels) ** exponent
    if toward == "lo":
        pts = lo + (hi - lo) * t
    else:
        pts = hi - (hi - lo) * t[::-1]
    eps = 8.0 * np.finfo(float).eps
    keep = [pts[0]]
    for p in pts[1:]:
        if p - keep[-1] >= eps * max(abs(p), abs(keep[-1])):
            keep.append(p)
    if keep[-1] != pts[-1]:
        if len(keep) == 1:
            keep.append(pts[-1])
        else:
            keep[-1] = pts[-1]
    return np.asarray(keep)


def panel_integrate(fn, breakpoints, order=12):
    """Composite Gauss-Legendre over consecutive panels, fixed order.

    fn must accept a numpy array of abscissae and return an array of values.
    Panels are summed in index order.
    """
    x, w = _gl_nodes(order)
    total = 0.0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi == lo:
            continue
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        total += half * float(np.dot(w, fn(mid + half * x)))
    return total


def panel_nodes_weights(breakpoints, order=12):
    """Flattened Gauss-Legendre nodes and weights of the composite rule."""
    x, w = _gl_nodes(order)
    nodes = []
    weights = []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi == lo:
            continue
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes.append(mid + half * x)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


class EvalBudget:
    """Counts integrand evaluations and raises once the cap is exceeded."""

    def __init__(self, limit, label="quadrature"):
        self.limit = int(limit)
        self.used = 0
        self.label = label

    def spend(self, n):
        self.used += int(n)
        if self.used > self.limit:
            raise ToleranceError(
                f"{self.label} exceeded its evaluation budget ({self.limit})"
            )

    def wrap(self, fn):
        def counted(x):
            arr = np.atleast_1d(x)
            self.spend(arr.size)
            return fn(x)

        return counted

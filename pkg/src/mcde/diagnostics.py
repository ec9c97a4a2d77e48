"""Boundedness diagnostics for powered log-CDF gradients.

These scans evaluate ``C(u, v)^a * |grad_theta log C(u, v)|`` on interior
grids and along paths into the lower corner, where the unweighted gradient
of several families misbehaves.  Evaluation deliberately bypasses the
input clamp used by the fitting code, so genuine boundary behaviour
(including floating-point underflow of C^a) is observable.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UnsupportedOperationError
from .families import IndependenceCopula

ScanPoint = namedtuple("ScanPoint", ["u", "value", "underflow"])


@dataclass
class BoundednessReport:
    family: str
    theta: list
    alpha_exponent: float
    grid_resolution: int
    sup_value: float
    sup_location: tuple
    diagonal_trace: list  # (u, value) pairs, u descending toward 0

    def to_dict(self):
        return {
            "family": self.family,
            "theta": self.theta,
            "alpha_exponent": self.alpha_exponent,
            "grid_resolution": self.grid_resolution,
            "sup_value": self.sup_value,
            "sup_location": list(self.sup_location),
            "diagonal_trace": [[u, v] for u, v in self.diagonal_trace],
        }


def _weighted_grad_norm(copula, pts, alpha):
    """C^alpha * ||grad log C|| without clamping; 0 where C^alpha underflows."""
    c = np.atleast_1d(copula.cdf(pts))
    vals = np.zeros(c.shape[0])
    under = c <= 0.0
    ok = ~under
    if ok.any():
        g = copula.log_grad_cdf(pts[ok], clamp=False)
        norm = np.linalg.norm(np.atleast_2d(g), axis=1)
        with np.errstate(divide="ignore"):
            weight = np.exp(alpha * np.log(c[ok]))
        vals[ok] = weight * norm
        under[ok] |= (weight == 0.0) & (norm > 0)
    return vals, under


def power_bounded_sup(copula, alpha, grid_n):
    """Supremum of the powered gradient norm over the open grid {k/(grid_n+1)}^2."""
    if copula.d != 2:
        raise UnsupportedOperationError("boundedness scan requires a bivariate copula")
    if grid_n < 10:
        raise InputError("grid_n must be at least 10")
    ticks = np.arange(1, grid_n + 1) / (grid_n + 1.0)
    uu, vv = np.meshgrid(ticks, ticks, indexing="ij")
    pts = np.column_stack([uu.ravel(), vv.ravel()])
    vals, _ = _weighted_grad_norm(copula, pts, alpha)
    imax = int(np.argmax(vals))
    diag_pts = np.column_stack([ticks, ticks])
    diag_vals, _ = _weighted_grad_norm(copula, diag_pts, alpha)
    trace = [(float(u), float(v)) for u, v in zip(ticks[::-1], diag_vals[::-1])]
    return BoundednessReport(
        family=copula.name,
        theta=np.asarray(copula.theta).tolist(),
        alpha_exponent=float(alpha),
        grid_resolution=int(grid_n),
        sup_value=float(vals[imax]),
        sup_location=(float(pts[imax, 0]), float(pts[imax, 1])),
        diagonal_trace=trace,
    )


def boundary_limit_scan(copula, alpha, u_values, path="diagonal"):
    """Powered gradient norm along a path into the lower corner.

    ``u_values`` must be strictly decreasing within (0, 0.5].  ``path``
    selects the diagonal (v = u) or the curve v = u^2.  Points where C^a
    underflows to zero are reported with value 0 and an underflow flag.
    """
    u = np.asarray(u_values, dtype=float)
    if u.ndim != 1 or u.size == 0:
        raise InputError("u_values must be a nonempty 1-D sequence")
    if (u <= 0).any() or (u > 0.5).any():
        raise InputError("u_values must lie in (0, 0.5]")
    if not (np.diff(u) < 0).all():
        raise InputError("u_values must be strictly decreasing")
    if path == "diagonal":
        pts = np.column_stack([u, u])
    elif path in ("square", "v=u^2"):
        pts = np.column_stack([u, u * u])
    else:
        raise InputError(f"unknown path {path!r}")
    if isinstance(copula, IndependenceCopula):
        # surfaced via log_grad_cdf as well; fail fast with a clear message
        copula.log_grad_cdf(pts)
    vals, under = _weighted_grad_norm(copula, pts, alpha)
    return [ScanPoint(float(ui), float(vi), bool(fi)) for ui, vi, fi in zip(u, vals, under)]


def surface_grid(copula, alpha, grid_n):
    """(u, v, value) triples on the open grid, row-major; plot-ready."""
    if copula.d != 2:
        raise UnsupportedOperationError("surface grid requires a bivariate copula")
    ticks = np.arange(1, grid_n + 1) / (grid_n + 1.0)
    uu, vv = np.meshgrid(ticks, ticks, indexing="ij")
    pts = np.column_stack([uu.ravel(), vv.ravel()])
    vals, _ = _weighted_grad_norm(copula, pts, alpha)
    return np.column_stack([pts, vals])


def write_surface_csv(grid, path):
    np.savetxt(path, grid, delimiter=",", header="u,v,value", comments="", fmt="%.12g")

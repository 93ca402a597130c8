"""Hyperboloid picture of the metric flow and divergence classification.

A unit-determinant metric maps to a point (x, y, z) on the upper sheet of the
hyperboloid z^2 - x^2 - y^2 = 1; the metric flow stays on a plane through
that point, so its trajectory is a conic section: an ellipse (bounded) when
the plane's slope is below one, a hyperbola (divergent) above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closed_form import Metric
from .errors import DegeneratePlaneError, NonNormalizableError
from .gaussian import is_normalizable, metric_from_b
from .model import SwansonParams

__all__ = [
    "DEFAULT_BAND",
    "HyperboloidPoint",
    "RegionLabel",
    "xyz_from_metric",
    "xyz_rhs",
    "plane_slope",
    "classify_metric",
    "classify_b",
    "grid_axes",
    "region_grid",
]

# half-width of the classifier's undecided band, in its comparison variable
DEFAULT_BAND = 0.02


class RegionLabel(Enum):
    BOUNDED = "bounded"
    DIVERGENT = "divergent"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class HyperboloidPoint:
    """Point on z^2 - x^2 - y^2 = 1 with z > 0, representing a metric."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.z <= 0:
            raise ValueError("hyperboloid point must lie on the upper sheet (z > 0)")

    @property
    def constraint_defect(self) -> float:
        return self.z * self.z - self.x * self.x - self.y * self.y - 1.0


def xyz_from_metric(g: Metric) -> HyperboloidPoint:
    return HyperboloidPoint(
        x=0.5 * (g.g_qq - g.g_pp),
        y=g.g_pq,
        z=0.5 * (g.g_pp + g.g_qq),
    )


def xyz_rhs(params: SwansonParams, pt: HyperboloidPoint) -> np.ndarray:
    """Velocity of the metric flow in hyperboloid coordinates; tangent to the sheet."""
    w0, d = params.omega0, params.delta
    return np.array(
        [
            2.0 * pt.y * (w0 + d * pt.x),
            -2.0 * w0 * pt.x + 2.0 * d * (1.0 + pt.y * pt.y),
            2.0 * d * pt.y * pt.z,
        ]
    )


def plane_slope(params: SwansonParams, pt0: HyperboloidPoint) -> float:
    """Slope of the conserved plane through the initial point.

    |slope| < 1 cuts the hyperboloid in an ellipse (bounded flow), > 1 in a
    hyperbola (finite-time divergence).
    """
    den = params.omega0 + params.delta * pt0.x
    if abs(den) <= 1e-12 * max(1.0, abs(params.delta * pt0.x)):
        raise DegeneratePlaneError("conserved plane is vertical for this initial metric")
    return params.delta * pt0.z / den


def _label_from_margin(margin: float, band: float) -> RegionLabel:
    if margin > band:
        return RegionLabel.BOUNDED
    if margin < -band:
        return RegionLabel.DIVERGENT
    return RegionLabel.BOUNDARY


def classify_metric(params: SwansonParams, g0: Metric, band: float = DEFAULT_BAND) -> RegionLabel:
    """Bounded/divergent/boundary by the conserved-plane slope.

    An exactly critical slope is never labelled bounded; the band around it
    absorbs cases numerics cannot resolve.
    """
    if band <= 0:
        raise ValueError("band must be positive")
    s = plane_slope(params, xyz_from_metric(g0))
    return _label_from_margin(1.0 - abs(s), band)


def classify_b(params: SwansonParams, b0: complex, band: float = DEFAULT_BAND) -> RegionLabel:
    """Bounded/divergent/boundary for an initial Gaussian uncertainty parameter.

    For positive coupling the bounded region is the half-plane
    Im(b) > delta/omega0; for negative coupling it is the interior of the
    circle |b + i*omega0/(2*delta)| = omega0/(2|delta|); everything is
    bounded in the Hermitian limit.  Agrees with classify_metric applied to
    the induced metric.
    """
    if band <= 0:
        raise ValueError("band must be positive")
    if not is_normalizable(b0):
        raise NonNormalizableError(f"Im(b) must be positive, got {b0.imag}")
    d = params.delta
    if d == 0.0:
        return RegionLabel.BOUNDED
    if d > 0.0:
        margin = b0.imag - d / params.omega0
    else:
        radius = params.omega0 / (2.0 * abs(d))
        margin = radius - abs(b0 - 1j * radius)
    return _label_from_margin(margin, band)


def grid_axes(re_range: tuple[float, float], im_range: tuple[float, float], resolution: int):
    """Sample axes for a rectangular classification grid (shared with the CLI)."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    re_lo, re_hi = re_range
    im_lo, im_hi = im_range
    if not (im_lo > 0.0 and im_hi > im_lo):
        raise ValueError("im_range must lie in the upper half-plane and be increasing")
    if not re_hi > re_lo:
        raise ValueError("re_range must be increasing")
    return np.linspace(re_lo, re_hi, resolution), np.linspace(im_lo, im_hi, resolution)


def region_grid(
    params: SwansonParams,
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    resolution: int,
    band: float = DEFAULT_BAND,
) -> np.ndarray:
    """Classification labels on a rectangular grid of initial b values.

    Returns an object array of RegionLabel with shape (resolution, resolution);
    rows run over ascending Im(b), columns over ascending Re(b).
    """
    re_vals, im_vals = grid_axes(re_range, im_range, resolution)
    labels = np.empty((resolution, resolution), dtype=object)
    for i, im in enumerate(im_vals):
        for j, re in enumerate(re_vals):
            labels[i, j] = classify_b(params, complex(re, im), band=band)
    return labels

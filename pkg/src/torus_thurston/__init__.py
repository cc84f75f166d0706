"""Thurston-type weak metric on the Teichmüller space of the torus."""
from .errors import DomainError
from .finsler import (
    GeodesicArc,
    PiecewisePath,
    Polyline,
    QuadratureConfig,
    geodesic_length_closed_form,
    norm_delta,
    norm_delta_p,
    path_length,
)
from .halfplane import HalfPlanePoint, TangentVector, geodesic_through, hyp_dist, mirror
from .oracle import OracleConfig
from .shapes import (
    Polyline2D,
    backward_ball_boundary,
    ellipse_foci,
    forward_ball_boundary,
    unit_circle_delta,
    unit_circle_delta_p,
)
from .thurston import delta, delta_oracle, delta_p, extremal_slopes, symmetrize
from .torus import CurveClass, MarkedFlatTorus, curve_length, kappa_sup, kerckhoff_delta1

__version__ = "0.1.0"

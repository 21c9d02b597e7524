"""Cassinian, triangular ratio, distance ratio and hyperbolic metrics on the
unit ball and on sampled bounded domains."""

from .ball import (
    MetricValue,
    TangencyCertificate,
    cassinian_ball,
    hat_c_ball,
    j_ball,
    rho_ball,
    s_ball,
    s_closed_form,
    s_extremal_angle,
    sh_half_rho,
    tangency_certificate,
)
from .distortion import (
    DistortionParams,
    SaturationError,
    c_of_K,
    casgrow_bound,
    eta_K,
    mu,
    mu_inverse,
    phi_K,
)
from .generic import cassinian_generic, j_generic, jung_ratio_bound, s_generic
from .geometry import (
    DomainError,
    DomainSpec,
    boundary_distance,
    load_boundary_csv,
    reduce_to_plane,
    sampled_domain,
    unit_ball,
)

__version__ = "0.1.0"

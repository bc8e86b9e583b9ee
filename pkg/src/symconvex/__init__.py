"""Support-function geometry of origin-symmetric planar convex bodies."""

from .body import (AngleGrid, ConvexBody, GridMismatchError, HarmonicSpectrum,
                   InvalidBodyError, ValidationReport, from_harmonics,
                   from_samples, make_disk, make_ellipse, minkowski_combine,
                   random_symmetric_body, scale, second_derivative, validate)
from .flow import FlowTrace, asymptotic_check, evaluate_F, evaluate_F_prime, trace
from .functionals import (GridDensity, SteinerCoefficients, area,
                          cone_volume_density, curvature, curvature_entropy,
                          mixed_cone_volume_density, mixed_volume, perimeter,
                          steiner_coefficients, sum_curvature)
from .inequalities import (InequalityReport, blyz_ratio, cauchy_schwarz_chain,
                           entropy_corollary, gage, log_minkowski_entropy,
                           normalized_lower_bound, uniqueness_witness,
                           wulff_gage)
from .solver import (SolverOptions, SolverResult, residual,
                     solve_log_minkowski, uniqueness_probe)

__version__ = "0.1.0"

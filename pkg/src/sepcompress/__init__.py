"""Margin preservation of linearly separable data under linear compression.

Build the geometric hard-SVM solution from nearest hull points, measure how
much a matrix distorts inner products over a point set, construct the
separating hyperplane of the compressed data, and evaluate compression-length
and generalization bounds.
"""
from .bounds import (BoundsConfig, compressed_gen_bound, gen_bound_L, general_compression_check,
                     jl_distortion_bound, min_general_compression_length, rip_sample_bound,
                     sparse_compression_length)
from .dataset import (GenConfig, Hyperplane, LabeledPoint, SupportSet, generate_separable,
                      load_csv, save_csv)
from .distortion import (DistortionReport, audit, eta_inner_product, eta_squared_distance,
                         gaussian_width_mc, ip_to_sd_bound, rip_constant_exact, sd_to_ip_bound,
                         sparse_ip_bound)
from .errors import (ContractError, DomainError, IterationLimit, NotSeparable, ParseError,
                     SepCompressError)
from .harness import SweepResult, VerificationReport, calibrate_constant, report_emit, sweep, verify
from .hullsvm import (HullWitness, compatibility_constant, construct_hyperplane, fit,
                      functional_margin, is_separable_lp, nearest_hull_points)
from .projection import ProjectionMatrix, apply, apply_set, generate

__version__ = "0.1.0"

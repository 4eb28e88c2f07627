"""Exact chain-level computations for tempered free chain complexes of groups."""

from .chains import (Chain, Exponential, Polynomial, augmentation, boundary, control_radius,
                     convolve, delta, diagonal_action, weighted_norm)
from .combing import (Combing, abelian_combing, contracting_homotopy, free_group_combing,
                      homotopy_norm_profile, verify_combing, verify_contraction)
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup, Group, group_from_json
from .homotopy import PointMap, elementary_homotopy, pushforward, verify_homotopy_identity
from .linalg import RatMatrix, homology_dims, rank
from .resolutions import (Cochain, bar_coboundary, bar_cohomology_finite,
                          cohomology_small_resolution, free_res_b0, free_res_b1, sigma)
from .rips import FiniteMetricSpace, build_rips, rips_homology

__version__ = "0.1.0"

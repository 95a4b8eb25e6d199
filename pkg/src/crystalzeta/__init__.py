"""Zeta functions of self-dual periodic combs, their zeros, and Riemann-type sequences."""

from .asymptotics import coeff_a, constant_A, expansion_log, expansion_main, expansion_smallx
from .crystal import (
    CrystallineMeasure, CyclicFunction, construct_selfdual, eigenspace_dimensions, finite_fourier,
    measure_from_function,
)
from .sequence import RiemannSequenceCandidate, check_structure, estimate_B, theta_sum, zero_sum
from .zerofind import Rectangle, ZeroRecord, isolate_zeros, winding_count, zeros_to_sequence
from .zetabuild import (
    ZetaLike, build_g_N, build_zeta_M, build_zeta_N, delta0_bound, dirichlet_head, residue_at_1, riemann,
    sigma0, xi_eval,
)

__version__ = "0.1.0"

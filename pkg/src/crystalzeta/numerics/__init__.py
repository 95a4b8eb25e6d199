"""Exact sequences and complex special functions."""

from .exact import bernoulli_number, bernoulli_polynomial, euler_number
from .gamma import EULER_GAMMA, digamma, gamma, log_gamma
from .hurwitz import hurwitz_zeta, riemann_zeta

__all__ = [
    "EULER_GAMMA",
    "bernoulli_number",
    "bernoulli_polynomial",
    "digamma",
    "euler_number",
    "gamma",
    "hurwitz_zeta",
    "log_gamma",
    "riemann_zeta",
]

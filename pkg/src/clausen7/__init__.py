"""High-precision Clausen-function and Dirichlet L-series toolkit.

Evaluates the Clausen function, Hurwitz zeta, Kronecker symbols and Dirichlet
L-series at arbitrary precision; integrates the singular log-tan integral
over (pi/3, pi/2) by tanh-sinh quadrature; verifies the identity chain
connecting that integral to the d = -7 L-value at s = 2; and rediscovers the
six-term Clausen relation by PSLQ integer-relation detection.
"""

from .exceptions import (ConfigurationError, DomainError, IntegrandError,
                         NonConvergenceError, PrecisionError,
                         RelationNotFoundError, UnknownIdentityError)
from .identities import (DEFAULT_SEED, EvalEnv, IdentityReport, IdentitySpec,
                         identity_ids, registry, verify, verify_all)
from .mpcontext import (PrecisionContext, Real, bernoulli, make_context,
                        zeta_even)
from .quadrature import (QuadratureResult, integrate_i7, integrate_i7_pieces,
                         lemma3_closed_form, log_tan_ratio_integral, tanh_sinh)
from .relations import EQ6_COEFFICIENTS, IntegerRelation, pslq, rediscover_eq6
from .specfun import (Discriminant, LSeriesPoint, arccot, clausen2,
                      clausen2_integral, dirichlet_L, dirichlet_L_clausen,
                      hurwitz_zeta, kronecker, zagier_A, zagier_A_quadrature)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "DomainError", "IntegrandError",
    "NonConvergenceError", "PrecisionError", "RelationNotFoundError",
    "UnknownIdentityError",
    "DEFAULT_SEED", "EvalEnv", "IdentityReport", "IdentitySpec",
    "identity_ids", "registry", "verify", "verify_all",
    "PrecisionContext", "Real", "bernoulli", "make_context", "zeta_even",
    "QuadratureResult", "integrate_i7", "integrate_i7_pieces",
    "lemma3_closed_form", "log_tan_ratio_integral", "tanh_sinh",
    "EQ6_COEFFICIENTS", "IntegerRelation", "pslq", "rediscover_eq6",
    "Discriminant", "LSeriesPoint", "arccot", "clausen2", "clausen2_integral",
    "dirichlet_L", "dirichlet_L_clausen", "hurwitz_zeta", "kronecker",
    "zagier_A", "zagier_A_quadrature",
    "__version__",
]

"""Fractional powers of the Bessel operator ``B_nu = D^2 + (nu/x) D`` on the semiaxis.

The fractional integral ``IB^alpha`` and derivative ``DB^alpha``, their kernels,
Mellin symbols and the closed form on power functions, with the quadrature
and special functions they rest on.
"""
from .corpus import CorpusEntry, compact_members, corpus_names, get, standard_corpus
from .errors import AccuracyError, CapabilityError, DomainError
from .functions import PiecewiseChebyshev, TestFunction, check_derivatives, sample_function
from .kernels import (OperatorParams, kernel_alpha1, kernel_hyp, kernel_hyp_dx,
                      kernel_legendre, kernel_nu0)
from .mellin import (IntegralMellin, MellinSymbol, mellin_of_integral, mellin_symbol_DB,
                     mellin_symbol_IB, mellin_transform, symbol_semigroup_check)
from .operators import (PowerCoefficient, bessel_applied, bessel_apply, bessel_apply_n,
                        bessel_expansion, compose_integrals, frac_bessel_derivative,
                        frac_bessel_integral, frac_bessel_integral_power, liouville_integral,
                        power_closed_form, sampled_derivative, sampled_integral,
                        saigo_integral, saigo_reduction)
from .quad import (DEFAULT_SPEC, QuadSpec, de_unit, integrate_finite, integrate_kernel_against,
                   integrate_lower_singular, integrate_panels, integrate_unit_singular)
from .specfun import (GammaRatio, gamma_ratio_eval, gamma_signed, hyp2f1, hyp2f1_nonpos,
                      legendre_p, ln_gamma_signed)

__version__ = "0.1.0"

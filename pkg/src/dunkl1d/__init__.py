"""One-dimensional Dunkl analysis: measure, transform, translation,
amalgam/Fofana norms, fractional operators, and a verification harness."""

from .errors import (ConfigurationError, ContractError, DataError,
                     DegenerateInputError, DomainError, DunklError,
                     NumericsWarning, UsageError)
from .functions import TestFunctionSpec, materialize, parse_function_spec
from .grid import (Ball, GridFunction, Interval, QuadratureGrid, ball_indicator,
                   build_grid, decreasing_rearrangement, distribution_function,
                   integrate, lorentz_norm, lp_norm, mu_ball)
from .harness import (SuiteConfig, VerificationReport, empirical_constant,
                      run_suite, suite_names)
from .norms import (CellPartition, FofanaResult, NormSpec, block_norm_continuous,
                    block_norm_discrete, fofana_norm, weak_block_norm,
                    weak_fofana_norm, weak_fofana_norm_direct)
from .operators import (HedbergSplit, SampledFunction, default_eval_nodes,
                        domination_constant, fractional_maximal,
                        hedberg_a_constant, hedberg_b_constant, hedberg_profile,
                        hedberg_split, hl_maximal, maximal_values_at,
                        riesz_potential, riesz_potential_grid)
from .special import (DunklParameter, dunkl_derivative, dunkl_kernel_imag,
                      gamma_fn, normalized_bessel_j)
from .transform import (SpectralFunction, default_freq_grid, forward,
                        indicator_transform_closed_form, inverse, synthesize)
from .translation import (ball_average, convolve, translate,
                          translate_pointwise_bound_check)

__version__ = "0.1.0"

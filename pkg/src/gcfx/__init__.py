"""Exact generalized continued fractions and irrationality-exponent bounds."""
from .cfcore import (CoefficientStream, Convergent, ConvergentState, Enclosure, Mobius, advance,
                     convergent, convergents, determinant, enclosure, evaluate, evaluate_finite,
                     residual_bounds, states)
from .transforms import (EquivalenceScaling, IrrationalityMeasure, equivalence, integerize,
                         transport_linear, transport_reciprocal)
from .bounds import (BoundedGrowth, BoundReport, ExponentialGrowth, NuTrace, PolynomialGrowth,
                     bounded_bound, check_growth, exp_bound, growth_bound, lemma_bound, nu_estimate,
                     poly_bound)
from .constructions import INFINITY, PrescribedPlan, approximation_audit, prescribed_stream, verify_lasku
from .catalog import (FIBONACCI, THUE_MORSE, Family, FamilySpec, density, family_bound, family_stream,
                      list_families)
from .errors import (ConditionViolatedError, DomainError, FamilyParamError, GCFError,
                     InvalidCoefficientError, InvalidMapError, InvalidScalingError, InvalidValueError,
                     NeedsMorePrecisionError, NonConvergenceError, ResourceLimitError, TieUnresolvedError)

__version__ = "0.1.0"

"""Square packings in the unit square and the conjectured values f(k^2+2c+1) = k + c/k."""
from .bounds import (BoundCertificate, BoundStep, Direction, EpsilonRecord, Hop, Premise, chain_derive,
                     check_certificate, certificate_violations, epsilon_diagnostic, limit_bound,
                     step_one_bound, step_two_bound, substitution_bound)
from .constructions import Decomposition, conjectured_value, construct_conjectured, decompose, grid, substitute
from .geometry import (Packing, Rational, Square, VerificationReport, Violation, scale_translate, side_sum,
                       squares_overlap, verify)
from .search import SearchConfig, SearchResult, counterexample_check, search, snap_to_rational

__version__ = "0.1.0"

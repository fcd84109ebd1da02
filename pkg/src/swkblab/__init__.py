"""Exact Wronskians, deformed quantum mechanical systems and SWKB integrals."""
from .deform import (DeformedSystem, build, build_krein_adler, build_multi_indexed, check_nodeless,
                     deformed_potential, identity, logderiv_sq, superpotential, susy_potential)
from .errors import (DimensionMismatch, DomainError, InvalidParameters, NoClassicalRegion,
                     QuadratureNonConvergence, SingularDeformation, SWKBError, TruncationError,
                     UnsupportedFamily)
from .exact_poly import ExactPolynomial, PrefactoredFunction, classical_poly, differentiate, evaluate, wronskian
from .scenario import Scenario, load_scenarios, reproduce_figure, run_scenario
from .swkb import find_turning_intervals, quadrature, swkb_integral, wkb_integral
from .systems import SystemSpec, breve, energy, validate_deformation
from .verify import isospectrality_report, solve_spectrum

__version__ = "0.1.0"

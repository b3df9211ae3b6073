"""Harmonic-function realizations of SL(2,C), SU(2), SU(1,1) and E2, with numerical checks."""

from .coords import UNIVERSAL, Covering, RemovedSetError
from .fd import FDScheme
from .geometry import LaplacianSpec, harmonic_residual, laplacian_values
from .liealg import (AlgebraRealization, apply, commutator_residual, e2_realization, sl2c_realization,
                     su2_realization, su11_realization)
from .quad import QuadratureSpec, gram_matrix, i_ab_closed, i_ab_numeric
from .report import CheckReport
from .repfun import (E2Label, SL2CLabel, SU2Label, SU11ContLabel, SU11DiscLabel, casimir_values,
                     covering_required, family_function, unitary_class)
from .suites import SUITES, SuiteConfig, run

__version__ = "0.1.0"

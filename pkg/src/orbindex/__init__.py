"""Exact twisted traces, Hochschild cocycles and orbifold index formulas
for the Weyl algebra over cyclotomic fields."""
from .scalars import CycloScalar, HbarSeries, TruncSeries, cyclo_embed_root
from .weyl import COMPLEX, REAL, WeylElement, WeylSpace, hbar_bracket, moyal_star
from .symplectic import (AdaptedForm, FiniteSubgroup, SymplecticMap, cayley_inverse,
                         fixed_decomposition, l_p_census)
from .hochschild import (HochschildChain, boundary_twisted, cycle_c2k, hkr_oracle,
                         koszul_twisted_hh)
from .cocycles import TwistedTraceData, split_space, tau_2k, tau_twisted, tr_gamma
from .lie import (MatrixWeyl, curvature_C, generating_S, theta_cocycle, theta_V,
                  verify_local_rr)
from .crossed import CrossedElement, SectorWeights, crossed_mul, sector_trace
from .index import (a_hat, algebraic_index, kawasaki_index, lefschetz_oracle, load_model,
                    normal_factor, twisted_chern)

__version__ = "0.1.0"

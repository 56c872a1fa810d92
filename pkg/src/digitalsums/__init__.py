"""Binary digital sums: exact integer sequences, their Dirichlet series, and
Fourier-series closed forms obtained from residues along dyadic pole lines."""

from .closed_forms import mdc_closed_form, ts_closed_form, tw1_closed_form, twm_closed_form
from .dgf import DgfExpr, PolyQ, RatFunc2s, build_bm, ir_numeric
from .digits import cw, mdc_f, s_m, ts_m, tv, tw_m, v, v2, w_m
from .errors import AccuracyError, CapabilityError, DomainError, PoleError
from .fourier import ClosedFormExpr, FourierSeries1
from .residues import Kernel, Pole, residue, sum_over_line
from .specfun import stieltjes, zeta, zeta_deriv

__version__ = "0.1.0"

"""Exact computations for the quasi-Hopf algebras Q(N, beta) over Q(zeta_8)."""

from .algebra import AlgElement, Gens, TensorElement
from .center import compute_center
from .quasihopf import QConfig, QuasiHopfQ, beta_choices, build_structures
from .scalars import CycScalar, LaurentScalar
from .verify import CheckResult, run_suite

__all__ = [
    "AlgElement", "Gens", "TensorElement", "CycScalar", "LaurentScalar", "QConfig",
    "QuasiHopfQ", "beta_choices", "build_structures", "compute_center", "CheckResult",
    "run_suite",
]

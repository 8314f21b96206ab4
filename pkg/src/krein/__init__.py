"""Self-adjoint extensions of symmetric operators through boundary triples.

Submodules:

- ``krein.linrel``: linear relations on C^n, self-adjointness and
  normalization of boundary-condition pairs (A, B), Cayley transforms,
  Arnold coordinate projections.
- ``krein.core``: Krein resolvent corrections, the spectral indicator
  sigma_min(B Q(z) - A) and eigenvalue search for any ``BoundaryModel``.
- ``krein.point``: point interactions on the line.
- ``krein.robin``: Robin / mixed boundary conditions on the half-plane.
"""

from .core import (
    BoundaryModel,
    InSpectrumError,
    SpectralResult,
    correction_left,
    correction_right,
    corrections_consistent,
    eigenspace,
    eigenvalue_scan,
    q_identity_residual,
    spectral_indicator,
)
from .linrel import (
    LinearRelation,
    ParamPair,
    adjoint_relation,
    arnold_projection,
    cayley_pair,
    cayley_transform,
    check_pair,
    is_normalized,
    is_selfadjoint,
    is_symmetric,
    normalize_pair,
    recover_denormalizer,
    relation_from_normalized_range,
    relation_from_pair,
    relation_from_span,
    relations_equal,
)
from .point import InteractionPoint, PointModel, bound_states, build_pair, green_function
from .robin import RobinProblem, robin_bound_states

__all__ = [
    "BoundaryModel",
    "InSpectrumError",
    "SpectralResult",
    "correction_left",
    "correction_right",
    "corrections_consistent",
    "eigenspace",
    "eigenvalue_scan",
    "q_identity_residual",
    "spectral_indicator",
    "LinearRelation",
    "ParamPair",
    "adjoint_relation",
    "arnold_projection",
    "cayley_pair",
    "cayley_transform",
    "check_pair",
    "is_normalized",
    "is_selfadjoint",
    "is_symmetric",
    "normalize_pair",
    "recover_denormalizer",
    "relation_from_normalized_range",
    "relation_from_pair",
    "relation_from_span",
    "relations_equal",
    "InteractionPoint",
    "PointModel",
    "bound_states",
    "build_pair",
    "green_function",
    "RobinProblem",
    "robin_bound_states",
]

__version__ = "0.1.0"

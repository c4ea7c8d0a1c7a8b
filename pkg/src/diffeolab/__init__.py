"""diffeolab: numerical experiments on diffeomorphism groups of the open interval.

The package builds, from scratch and with certified tolerances, the pieces
of a concrete obstruction to integrating velocity fields inside the group
of increasing diffeomorphisms of (0, 1): a normalized bump function and its
partial masses (mollifier), candidate maps with membership tests, inversion
and differentiation (diffeo), the mollified-translation family whose time
derivative at zero is the constant velocity 1 (family), seminorms for the
compact-open topology (seminorms), a characteristics integrator with escape
detection plus the non-integrability witness (flow), and a plane
realization whose induced field blows up in finite time (manifold).  The
cli module ties everything into reproducible command-line runs and the
certify module packages the acceptance checks.
"""

from . import diffeo, family, flow, manifold, mollifier, seminorms
from .diffeo import Diffeo, MembershipReport, ProbeGrid
from .errors import (
    BoundaryViolationError,
    DiffeolabError,
    DomainError,
    FieldError,
    IntegrationError,
    NotAttainedError,
    ParameterError,
    QuadratureError,
    StencilError,
)
from .flow import FlowResult, VelocityField
from .mollifier import MollifierConstants
from .seminorms import SeminormIndex

__version__ = "0.1.0"

__all__ = [
    "Diffeo",
    "MembershipReport",
    "ProbeGrid",
    "FlowResult",
    "VelocityField",
    "MollifierConstants",
    "SeminormIndex",
    "DiffeolabError",
    "ParameterError",
    "DomainError",
    "QuadratureError",
    "NotAttainedError",
    "StencilError",
    "FieldError",
    "BoundaryViolationError",
    "IntegrationError",
    "diffeo",
    "family",
    "flow",
    "manifold",
    "mollifier",
    "seminorms",
    "__version__",
]

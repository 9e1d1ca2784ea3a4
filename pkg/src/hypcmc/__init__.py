"""Constant mean curvature one surfaces in hyperbolic space: Bryant frames,
the pseudometric Jacobi operator, its spectrum for ``G = z^mu`` and index
reports."""

__version__ = "0.1.0"

from .errors import (DegenerateError, DomainError, HypCMCError, IllDefinedEndError,  # noqa: E402
                     IntegrationError, NotRegularEndError, PreconditionError,
                     ToleranceError, UnknownNameError)
from .holo import BranchedPoint, HoloFn, Path, cpow, hypergeom_terminating  # noqa: E402
from .weierstrass import (Frame, SU2Matrix, WeierstrassData, immerse,  # noqa: E402
                          integrate_frame, minimal_immersion, monodromy,
                          secondary_gauss, su2_action)
from .geometry import (metric_and_curvature, pseudometric_factor,  # noqa: E402
                       rayleigh_quotient, total_pseudo_area)
from .oracle import analytic_index, eigenfunction, lambda_pq  # noqa: E402
from .spectrum import assemble_mode, numeric_spectrum, radial_weight  # noqa: E402
from .eigen import eig_gen_sym  # noqa: E402
from .index import (catalog_lookup, deformation_bound, index_interval,  # noqa: E402
                    vision_bound)
from .killing import (end_projection_limit, killing_at,  # noqa: E402
                      normal_projection_field, vision_numbers)
from .ends import asymptotic_graph, classify_end, frame_asymptote  # noqa: E402
from .mesh import GridSpec, mesh_generate  # noqa: E402

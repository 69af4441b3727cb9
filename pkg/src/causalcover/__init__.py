"""Causal structure of static cones, punctured Minkowski space and their coverings.

Submodules:

* ``cone`` / ``cone_mesh``: flat-cone geodesics and an independent mesh oracle;
* ``static``: causal relations of static products over a cone base;
* ``punctured`` / ``punctured_oracle``: exact chronology on the punctured
  plane's universal cover and a lattice oracle for it;
* ``criterion`` / ``spacetimes``: conformal Killing checks and completeness probes;
* ``surfaces``: null convergences of codimension-two surfaces;
* ``report`` / ``svg`` / ``cli``: scenario runner, diagrams and command line.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .cone import (  # noqa: E402
    ApexRoute,
    ConeGeometry,
    ConeKind,
    ConePoint,
    GeodesicResult,
    distance,
    is_geodesically_convex,
    sector_angle,
)
from .static import (  # noqa: E402
    Event,
    Verdict,
    check_reflectivity_samples,
    classify,
    is_causal_relation_closed,
)
from .punctured import (  # noqa: E402
    LEFT,
    RIGHT,
    CoverPoint,
    MEvent,
    Mid,
    chron_base,
    gaps_reachable,
    in_closure_future,
    in_closure_past,
    lifted_chron,
    reflectivity_report,
    window,
)
from .criterion import (  # noqa: E402
    certify_past_reflectivity,
    is_conformal_timelike_killing,
    lie_derivative_residual,
    probe_past_completeness,
)
from .surfaces import is_inner_trapped, mean_curvature_fd, null_convergences  # noqa: E402

__all__ = [
    "__version__",
    "ApexRoute", "ConeGeometry", "ConeKind", "ConePoint", "GeodesicResult",
    "distance", "is_geodesically_convex", "sector_angle",
    "Event", "Verdict", "check_reflectivity_samples", "classify", "is_causal_relation_closed",
    "LEFT", "RIGHT", "CoverPoint", "MEvent", "Mid", "chron_base", "gaps_reachable",
    "in_closure_future", "in_closure_past", "lifted_chron", "reflectivity_report", "window",
    "certify_past_reflectivity", "is_conformal_timelike_killing", "lie_derivative_residual",
    "probe_past_completeness",
    "is_inner_trapped", "mean_curvature_fd", "null_convergences",
]

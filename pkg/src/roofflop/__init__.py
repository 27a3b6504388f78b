"""roofflop: certified mutation calculus for homogeneous-bundle SODs.

The package computes Borel-Weil-Bott cohomology of homogeneous bundles on a
small catalog of orthogonal Grassmannians and flag varieties, evaluates
graded Hom between compound bundle expressions on blow-up resolutions and
hyperplane sections, and replays scripted mutation sequences of
semiorthogonal decompositions, emitting machine-checkable certificates.
"""

from .rootsys import (
    RootSystem,
    build_root_system,
    dominant_conjugate,
    freudenthal_multiplicities,
    tensor_decompose,
    weyl_dim,
)
from .bwb import GradedDim, HomogeneousSpace, IrrBundle, bott_cohomology, rhom_irr
from .spaces import Catalog, load_standard_catalog
from .bundle_expr import parse_bundle_expr, expr_to_str
from .sheafcalc import (
    AmbientContext,
    SheafObject,
    expand,
    rhom,
    verify_lemma_van,
    verify_lemma_van2,
)
from .mutation import Certificate, SOD, run_script, relative_stamp

__all__ = [
    "RootSystem",
    "build_root_system",
    "dominant_conjugate",
    "freudenthal_multiplicities",
    "tensor_decompose",
    "weyl_dim",
    "GradedDim",
    "HomogeneousSpace",
    "IrrBundle",
    "bott_cohomology",
    "rhom_irr",
    "Catalog",
    "load_standard_catalog",
    "parse_bundle_expr",
    "expr_to_str",
    "AmbientContext",
    "SheafObject",
    "expand",
    "rhom",
    "verify_lemma_van",
    "verify_lemma_van2",
    "Certificate",
    "SOD",
    "run_script",
    "relative_stamp",
]

__version__ = "0.1.0"

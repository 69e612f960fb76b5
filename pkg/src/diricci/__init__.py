"""Exact Ricci curvature, comparison bounds and maximal-diameter rigidity for digraphs."""

from .curvature import (
    Geometry,
    MeanCurvatures,
    RicciReport,
    chain_inequality_check,
    curvature_report,
    kappa_eps,
    mean_curvature,
    ricci,
    ricci_bruteforce,
    ricci_eps_limit,
)
from .generators import directed_complete, directed_cycle, random_strongly_connected, triforce
from .graph import (
    DiGraph,
    DistMatrix,
    all_pairs_distance,
    build_graph,
    diameter,
    geodesic_pairs,
    is_eulerian,
    is_lipschitz,
)
from .markov import (
    Kernel,
    eulerian_mean_kernel,
    laplacian_apply,
    mean_kernel,
    perron_measure,
    reverse_kernel,
    transition_kernel,
)
from .products import ProductSpec, cartesian_product, make_spec, maxdiam_product_equivalence
from .rigidity import (
    bonnet_myers,
    cheng_verify,
    is_spherically_suspended,
    laplacian_comparison_residual,
    pairwise_diameter_check,
    superharmonic_spread,
)
from .spectral import lambda1, spectrum
from .transport import kantorovich_bruteforce, smoothed_measure, wasserstein

__version__ = "0.1.0"

__all__ = [
    "DiGraph", "DistMatrix", "Geometry", "Kernel", "MeanCurvatures", "ProductSpec", "RicciReport",
    "all_pairs_distance", "bonnet_myers", "build_graph", "cartesian_product", "chain_inequality_check",
    "cheng_verify", "curvature_report", "diameter", "directed_complete", "directed_cycle",
    "eulerian_mean_kernel", "geodesic_pairs", "is_eulerian", "is_lipschitz", "is_spherically_suspended",
    "kantorovich_bruteforce", "kappa_eps", "lambda1", "laplacian_apply", "laplacian_comparison_residual",
    "make_spec", "maxdiam_product_equivalence", "mean_curvature", "mean_kernel", "pairwise_diameter_check",
    "perron_measure", "random_strongly_connected", "reverse_kernel", "ricci", "ricci_bruteforce",
    "ricci_eps_limit", "smoothed_measure", "spectrum", "superharmonic_spread", "transition_kernel",
    "triforce", "wasserstein",
]

"""wrescheck: exact-arithmetic verification of the spectral Einstein
functional density for inner-fluctuated Dirac operators."""

from .scalars import GaussianRational, TPoly, as_fraction
from .clifford import (
    CliffordElement,
    clifford_of,
    generate_gammas,
    normalized_trace,
    trace,
    wick_trace_oracle,
)
from .geometry import (
    ConnectionData,
    PointGeometry,
    RiemannTensor,
    VectorJet,
    add_riemann,
    connection_data,
    kulkarni_nomizu_square,
    pointwise_ops,
    ricci,
    scalar,
    validate,
)
from .jets import (
    SymbolJet,
    SymbolTerm,
    compose,
    d_x,
    d_xi,
    dirac_jets,
    eval_x0,
    jet_product,
    jets_equal_mod_radial,
    laplace_inverse_jets,
    multiplier_jet,
)
from .residue import (
    DensityReport,
    DensityValue,
    composed_ab_symbols,
    einstein_density,
    h_terms,
    integrate_density,
    oracle_part2,
    part1_density,
    part1_subintegrals,
    part2_density,
    sphere_moment,
    sphere_moment_oracle,
    transcribed_ab_symbols,
)
from .closedforms import (
    cf_h,
    cf_lemma11,
    cf_part1,
    cf_part2_total,
    cf_theorem12,
    trace_identity_claims,
)
from .conventions import CONVENTIONS_NOTE, conventions_hash

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "TPoly",
    "as_fraction",
    "CliffordElement",
    "clifford_of",
    "generate_gammas",
    "normalized_trace",
    "trace",
    "wick_trace_oracle",
    "ConnectionData",
    "PointGeometry",
    "RiemannTensor",
    "VectorJet",
    "add_riemann",
    "connection_data",
    "kulkarni_nomizu_square",
    "pointwise_ops",
    "ricci",
    "scalar",
    "validate",
    "SymbolJet",
    "SymbolTerm",
    "compose",
    "d_x",
    "d_xi",
    "dirac_jets",
    "eval_x0",
    "jet_product",
    "jets_equal_mod_radial",
    "laplace_inverse_jets",
    "multiplier_jet",
    "DensityReport",
    "DensityValue",
    "composed_ab_symbols",
    "einstein_density",
    "h_terms",
    "integrate_density",
    "oracle_part2",
    "part1_density",
    "part1_subintegrals",
    "part2_density",
    "sphere_moment",
    "sphere_moment_oracle",
    "transcribed_ab_symbols",
    "cf_h",
    "cf_lemma11",
    "cf_part1",
    "cf_part2_total",
    "cf_theorem12",
    "trace_identity_claims",
    "CONVENTIONS_NOTE",
    "conventions_hash",
    "__version__",
]

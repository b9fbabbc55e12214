"""Bracket constants, Catalan radii and exact truncated BCH for Banach-Malcev shift algebras."""

__version__ = "0.1.0"

from .algebra import BasisIndex, Element, WeightLaw, add, bracket, norm, product, scale
from .bch import (BigradedSeries, TruncationReport, bch_truncated, exp_series, homogeneous_norms,
                  radius_diagnostic, sharpness_harness, truncation_bound, truncation_report)
from .constants import (ConstantReport, bracket_constant, local_ratio, poly_weight_inequality_check,
                        table_generator)
from .errors import (ConfigurationError, DomainError, MalcevBCHError, ResourceError,
                     UnsupportedModelError)
from .integrator import SplittingExperiment, stability_threshold, sweep
from .models import (ModelConfig, ModelSpec, catalog_lookup, jacobiator, malcev_residual)
from .trees import (Leaf, MajorantSeries, Node, catalan, enumerate_trees, good_tree_count,
                    is_good_tree, majorant, tree_commutator)
from .zorn import ZornElement, zorn_multiply

__all__ = [
    "BasisIndex", "Element", "WeightLaw", "add", "bracket", "norm", "product", "scale",
    "BigradedSeries", "TruncationReport", "bch_truncated", "exp_series", "homogeneous_norms",
    "radius_diagnostic", "sharpness_harness", "truncation_bound", "truncation_report",
    "ConstantReport", "bracket_constant", "local_ratio", "poly_weight_inequality_check", "table_generator",
    "ConfigurationError", "DomainError", "MalcevBCHError", "ResourceError", "UnsupportedModelError",
    "SplittingExperiment", "stability_threshold", "sweep",
    "ModelConfig", "ModelSpec", "catalog_lookup", "jacobiator", "malcev_residual",
    "Leaf", "MajorantSeries", "Node", "catalan", "enumerate_trees", "good_tree_count", "is_good_tree",
    "majorant", "tree_commutator", "ZornElement", "zorn_multiply",
]

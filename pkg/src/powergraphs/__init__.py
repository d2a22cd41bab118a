"""Power graphs of finite groups: construction, exact invariants and closed-form checks."""

from .algo import (
    clique_number_exact,
    connected_components,
    diameter,
    distance,
    is_complete,
    is_connected,
    maximal_cliques,
)
from .claims import CLAIM_IDS, ClaimReport, Corpus, default_corpus, run_corpus, verify
from .config import Limits
from .divisors import MCDSet, divisors, enumerate_mcd_sets, euler_phi, factorize, weight, weight_of_set
from .errors import (
    DomainError,
    GroupValidationError,
    PowerGraphError,
    ResourceError,
    SpecParseError,
    UsageError,
)
from .graph import (
    BitGraph,
    LinkageGraph,
    PowerGraph,
    Variant,
    build_linkage_graph,
    build_power_graph,
    closed_neighborhood,
    export_graph,
)
from .group import (
    Group,
    Subgroup,
    count_order_p_subgroups,
    cyclic_subgroup,
    direct_product,
    element_order,
    exponent,
    is_cyclic,
    is_generalized_quaternion,
    is_nilpotent,
    is_p_group,
    load_group,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elem_abelian,
    make_symmetric,
    maximal_cyclic_subgroups,
    multiply,
    save_group,
    sylow_subgroup,
)
from .groupspec import Atom, Product, build_group, parse_spec, render_spec

__version__ = "0.1.0"

__all__ = [
    "clique_number_exact",
    "connected_components",
    "diameter",
    "distance",
    "is_complete",
    "is_connected",
    "maximal_cliques",
    "CLAIM_IDS",
    "ClaimReport",
    "Corpus",
    "default_corpus",
    "run_corpus",
    "verify",
    "Limits",
    "MCDSet",
    "divisors",
    "enumerate_mcd_sets",
    "euler_phi",
    "factorize",
    "weight",
    "weight_of_set",
    "DomainError",
    "GroupValidationError",
    "PowerGraphError",
    "ResourceError",
    "SpecParseError",
    "UsageError",
    "BitGraph",
    "LinkageGraph",
    "PowerGraph",
    "Variant",
    "build_linkage_graph",
    "build_power_graph",
    "closed_neighborhood",
    "export_graph",
    "Group",
    "Subgroup",
    "count_order_p_subgroups",
    "cyclic_subgroup",
    "direct_product",
    "element_order",
    "exponent",
    "is_cyclic",
    "is_generalized_quaternion",
    "is_nilpotent",
    "is_p_group",
    "load_group",
    "make_alternating",
    "make_cyclic",
    "make_dicyclic",
    "make_dihedral",
    "make_elem_abelian",
    "make_symmetric",
    "maximal_cyclic_subgroups",
    "multiply",
    "save_group",
    "sylow_subgroup",
    "Atom",
    "Product",
    "build_group",
    "parse_spec",
    "render_spec",
    "__version__",
]

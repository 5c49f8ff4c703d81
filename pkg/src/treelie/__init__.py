"""Exact calculators for group expansions, free Lie algebras, colored
tree diagrams and their gluing product, and the defect tensors of
endomorphisms of free nilpotent quotients."""

__version__ = "0.1.0"

from .freegroup import (
    GroupWord,
    WordSyntaxError,
    commutator,
    generator_name,
    parse_word,
    surface_relator,
)
from .magnus import (
    DEFAULT_CAP,
    EXCEEDS_CAP,
    INFINITE_WEIGHT,
    NcSeries,
    lcs_weight,
    leading_term,
    magnus_expand,
    series_commutator,
)
from .freelie import (
    LieElement,
    bracket_str,
    dim_lie,
    dynkin,
    from_leading,
    from_tensor,
    is_lyndon,
    lie_bracket,
    lyndon_basis,
    lyndon_bracketing,
    lyndon_words,
    to_tensor,
)
from .dspace import (
    HTensorLie,
    bracket_contraction,
    coordinates_in_basis,
    dn_basis,
    dn_contains,
    dn_rank,
)
from .diagrams import (
    Diagram,
    DiagramSum,
    EMPTY_DIAGRAM,
    all_trees,
    canonicalize,
    connected_diagrams,
    ihx_relators,
    tree_space,
    tripod_raw,
)
from .psi import psi, psi_in_kernel, rooted_embed, rooted_to_lie
from .stacking import (
    SkewForm,
    StackingForm,
    contraction_bracket,
    default_stacking,
    intersection_matrix,
    omega_form,
    project_trees,
    stack_bracket,
    star,
    star_unit,
)
from .johnson import (
    FreeEndo,
    fixes_surface_relator,
    is_automorphism_mod,
    johnson_map,
    lie_lift,
    realize,
    weight_level,
)
from .massey import massey_eval, mu_element, mu_hat
from .verify import SUITES, run_suite

__all__ = [
    "__version__",
    "GroupWord",
    "WordSyntaxError",
    "commutator",
    "generator_name",
    "parse_word",
    "surface_relator",
    "DEFAULT_CAP",
    "EXCEEDS_CAP",
    "INFINITE_WEIGHT",
    "NcSeries",
    "lcs_weight",
    "leading_term",
    "magnus_expand",
    "series_commutator",
    "LieElement",
    "bracket_str",
    "dim_lie",
    "dynkin",
    "from_leading",
    "is_lyndon",
    "lyndon_bracketing",
    "from_tensor",
    "lie_bracket",
    "lyndon_basis",
    "lyndon_words",
    "to_tensor",
    "HTensorLie",
    "bracket_contraction",
    "coordinates_in_basis",
    "dn_basis",
    "dn_contains",
    "dn_rank",
    "Diagram",
    "DiagramSum",
    "EMPTY_DIAGRAM",
    "all_trees",
    "canonicalize",
    "ihx_relators",
    "connected_diagrams",
    "tree_space",
    "tripod_raw",
    "psi",
    "psi_in_kernel",
    "rooted_embed",
    "rooted_to_lie",
    "SkewForm",
    "StackingForm",
    "contraction_bracket",
    "default_stacking",
    "intersection_matrix",
    "omega_form",
    "project_trees",
    "stack_bracket",
    "star",
    "star_unit",
    "FreeEndo",
    "fixes_surface_relator",
    "is_automorphism_mod",
    "johnson_map",
    "lie_lift",
    "realize",
    "weight_level",
    "massey_eval",
    "mu_element",
    "mu_hat",
    "SUITES",
    "run_suite",
]

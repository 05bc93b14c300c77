"""dipcalc: finite diptychs, groupoids and their calculus, checked by exhaustion."""

from .fincat import (
    CategoryError, FinCategory, FinFunctor, FnArrow, Square, ValidationReport, find_limit,
    set_skeleton, validate_category,
)
from .diptych import (
    Diptych, Prediptych, SquareClassification, check_diptych, check_prediptych, classify_square,
    set_diptych, set_prediptych,
)
from .groupoid import (
    FinGroupoid, GroupoidError, GroupoidMorphism, banal, check_groupoid, cyclic_group,
    find_isomorphism, godement_realize, null, principal_groupoid, transitor,
)
from .morphism import (
    ActionLaw, MorphismClass, action_groupoid, classify_morphism, induced_groupoid, kernel,
    two_sided_quotient,
)
from .nerve import nerve_exactness_check, symmetric_nerve
from .butterfly import ButterflyDiagram, check_butterfly, check_transversality
from .canonical import CanonicalButterfly, canonical_butterfly
from .conjugation import (
    Cocycle, Cover, cocycle_from_table, cohomologous, conjugate_principal, double_conjugation_isos,
    gauge_groupoid, mirror_square, torsor_from_cocycle, universal_activation,
)
from .textformat import Document, ParseError, parse, serialize

__version__ = "0.1.0"

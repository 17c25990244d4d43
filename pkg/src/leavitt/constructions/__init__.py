from .desing import Desingularization, desingularize
from .eg import (
    CornerQ,
    EGData,
    NotReachable,
    SigmaStrategyFailed,
    alpha_path,
    build_EG,
    corner_project,
    r_prime,
    signature,
    word_ranges,
)
from .families import (
    FAMILY_AXIOMS,
    build_family,
    desing_family,
    gegiso,
    gegiso_inverse,
    generator_family,
    glugl,
    lex3,
    lfg,
    llgex,
    llgex2,
    pi_F,
    sigma_unit,
)
from .gf import build_GF, gf_parts, r_of

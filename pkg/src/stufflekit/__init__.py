"""Exact quasi-shuffle algebra with its symmetric-function, formal-group,
renormalization, multizeta, and sphere-quadrature companions."""

from .combinatorics import (
    CommensurableSet,
    Composition,
    DiracCode,
    Partition,
    compositions,
    decode,
    encode,
    is_lyndon,
    lyndon_compositions,
    lyndon_factorization,
    partitions,
    relative_cardinality,
)
from .fgl import (
    SeriesSubstitution,
    chern_polynomial,
    landweber_coaction,
    universal_exp,
    universal_fgl,
    universal_log,
)
from .mpoly import MPoly
from .mzv import MzvValue, check_stuffle, zeta, zeta_regularized
from .quasishuffle import (
    NULL_BRACKET,
    STANDARD_BRACKET,
    Bracket,
    LaurentPoly,
    RegularizedPoly,
    WordPoly,
    alexander_twist,
    antipode,
    coproduct,
    deconcat_coproduct,
    hoffman_exp,
    hoffman_log,
    is_admissible,
    pairing,
    quasi_shuffle,
    regularize,
)
from .renorm import (
    FlowOperator,
    cartier_generator,
    chern_character,
    renormalize,
    st_modulus,
)
from .series import TruncSeries, compose, invert
from .spheremaps import (
    QuadratureGrid,
    SphereMap,
    degree,
    mercator,
    nambu_goto_alpha,
    sphere_volume,
)
from .symmfunc import SymPoly, convert, cp_class, embed_qsymm, hall_pairing

__version__ = "0.1.0"

"""Exact one-dimensional translational scissors congruence."""

from .errors import DomainError, PrecisionError, SciscalError
from .generators import (
    GENERATOR_SIGN,
    GeneratorClass,
    GeneratorSpec,
    GradedElement,
    class_product,
    expected_class,
    generator_chain,
    generator_class,
    generator_flags,
    verify_generator,
)
from .homology import (
    PT,
    R,
    SNAKE_SIGN,
    ZR,
    BarChain,
    WedgeClass,
    bar_diff,
    class_extract,
    homology_class,
    is_cycle,
    shuffle_cycle,
    snake_closed_form,
    snake_pipeline,
)
from .iet import IET, Interval, iet_compose, iet_identity, iet_inverse, iet_rotation
from .polytope import PtElement, ZRElement, pt_beta, pt_interval, pt_vol, zr_debracket, zr_eps
from .rect import RET, rect_compose, rect_from_iets, rect_inverse, rect_tensor_class
from .regulator import UNIVERSAL_MEASURE, VOLUME, Measure, regulator_flag, regulator_viaduct
from .scalar import Scalar, ScalarContext, ctx_new, scalar_cmp
from .spans import (
    CoverMap,
    DMCSpan,
    Move,
    Viaduct,
    covers_common_refinement,
    dmc_common_subdivision,
    factor_move_cover,
    flag_to_viaduct,
)

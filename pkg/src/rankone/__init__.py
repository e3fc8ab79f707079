"""Word complexity of rank-one subshifts: construction, exact counting,
family analytics, stage rewrites and a symbolic tower model."""
from .words import Word
from .construction import (IntRule, SpacerRow, RankOneSpec, build_word, expand_stage, heights,
                           make_explicit, make_named, make_the_ts)
from .complexity import (ComplexityTable, cassaigne_check, detect_quasi_sturmian, lower_bound_witness,
                         ratio_profile, right_special, subshift_complexity)
from .errors import (CapacityError, ClassificationError, NormalizationError, PreconditionError,
                     StabilizationError, TableExhaustedError)
from .family import (GrowthFunction, TheTsParams, choose_params_minimal, choose_params_msj,
                     choose_params_totally_ergodic, classify_rs, predicted_complexity, predicted_limits)

__version__ = "0.1.0"

from hankelring.groebner.settings import EngineSettings, engine_settings, use_engine_settings
from hankelring.groebner.buchberger import groebner, normal_form, reduce_polynomial
from hankelring.groebner.ideals import Ideal, QuotientRing
from hankelring.groebner.operations import (
    eliminate,
    frobenius_power,
    ideal_quotient,
    intersect,
    radical_membership,
    saturation,
)
from hankelring.groebner.hilbert import dimension_and_length, min_generators, socle_dimensions

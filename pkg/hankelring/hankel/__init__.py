from hankelring.hankel.model import (
    Canonicalization,
    GeneralHankelContext,
    HankelContext,
    build,
    canonicalize,
    cm_hsop,
    delta,
    hsop,
    p_bracket,
    socle_monomials,
)
from hankelring.hankel.secant import SecantContext, parametrization_kernel, secant_generators
from hankelring.hankel.witness import WitnessError, fedder_witness

from hankelring.charp.fedder import fedder_check, frobenius_colon
from hankelring.charp.thresholds import (
    FptResult,
    FrobeniusQuery,
    NuObservation,
    fpt_determinantal,
    fpt_determinantal_closed_form,
    fpt_maximal_closed_form,
    fpt_maximal_ideal,
    height_chain_check,
    nu_e_ambient,
    nu_e_maximal_ideal,
)

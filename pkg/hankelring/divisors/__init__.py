from hankelring.divisors.divisorial import (
    DivisorialIdeal,
    class_order,
    class_power,
    class_product,
    is_principal,
    reflexive_hull,
)
from hankelring.divisors.symbolic import canonical_module, symbolic_power_verify, valuation_proxy

"""
Divisor class arithmetic on Hankel determinantal rings: reflexive hulls, class products and orders,
and the certificate that the ideals p<k> are the symbolic powers of p.
"""

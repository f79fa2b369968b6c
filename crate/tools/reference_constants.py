#!/usr/bin/env python3
"""Print 50-digit reference values used by the constant cross-check tests.

Run once with mpmath installed; the output is pasted into
crates/core/tests/reference_constants.rs.
"""
import mpmath as mp

mp.mp.dps = 80

A = mp.zeta(3)
c = mp.zeta(-1, derivative=1)
B = mp.power(2, mp.mpf(25) / 26) * mp.e**c * mp.power(A, mp.mpf(7) / 26) / mp.sqrt(12 * mp.pi)
ln_glaisher = mp.log(mp.glaisher)

for name, value in [
    ("ZETA3", A),
    ("ZETA_PRIME_MINUS_ONE", c),
    ("PLANE_B", B),
    ("LN_GLAISHER", ln_glaisher),
    ("PI", mp.pi),
    ("LN2", mp.log(2)),
    ("LN10", mp.log(10)),
]:
    print(f'pub const {name}: &str = "{mp.nstr(value, 50, strip_zeros=False)}";')

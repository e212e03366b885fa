"""Frozen high-precision reference values.

Generated by scripts/gen_reference_values.py (50-digit mpmath,
closed-form reductions independent of the package engines).
"""

OMEGA_LERAY_PLUS_GAUSS_M1 = 3.377361653414662315627138
EPS_PLUS_GAUSS_M1 = 0.1830055121939087579786303
EPV_PLUS_GAUSS_M1 = -0.3807863677333083911960795
EPS_PLUS_POSITION_GAUSS = 0.5

"""Published 4-decimal reference values for the two mode tables.

``table1``: 15-layer equispaced stack xi_i = 16 - i at order 1, sigma0 = 1.
``table2``: 16-layer geometric stack xi_1 = 16, ratio 0.8, at order 2.
Each row pairs the mode value lambda with the resonant shell conductivity.
"""

TABLE1_LAMBDA_EVEN = [
    0.3205, 0.3094, 0.2898, 0.2598, 0.2172, 0.1603, 0.0896, 0.0093,
    -0.0725, -0.1468, -0.2078, -0.2540, -0.2868, -0.3081, -0.3202,
]
TABLE1_SIGMA_EVEN = [
    -4.5699, -4.2469, -3.7566, -3.1624, -2.5359, -1.9441, -1.4367, -1.0378,
    -0.7467, -0.5461, -0.4128, -0.3262, -0.2710, -0.2374, -0.2193,
]
TABLE1_LAMBDA_ODD = [
    0.3202, 0.3081, 0.2868, 0.2540, 0.2078, 0.1468, 0.0725, -0.0093,
    -0.0896, -0.1603, -0.2172, -0.2598, -0.2898, -0.3094, -0.3205,
]
TABLE1_SIGMA_ODD = [
    -4.5605, -4.2123, -3.6894, -3.0657, -2.4225, -1.8312, -1.3391, -0.9636,
    -0.6960, -0.5144, -0.3943, -0.3162, -0.2662, -0.2355, -0.2188,
]

TABLE2_LAMBDA_EVEN = [
    0.4547, 0.3831, 0.2777, 0.1671, 0.0812, 0.0296, 0.0068, 0.0007,
    -0.0009, -0.0079, -0.0327, -0.0871, -0.1754, -0.2857, -0.3878, -0.4563,
]
TABLE2_SIGMA_EVEN = [
    -21.0821, -7.5514, -3.4990, -2.0042, -1.3877, -1.1258, -1.0274, -1.0027,
    -0.9966, -0.9690, -0.8771, -0.7033, -0.4807, -0.2728, -0.1263, -0.0457,
]
TABLE2_LAMBDA_ODD = [
    0.4563, 0.3878, 0.2857, 0.1754, 0.0871, 0.0327, 0.0079, 0.0009,
    -0.0007, -0.0068, -0.0296, -0.0812, -0.1671, -0.2777, -0.3831, -0.4547,
]
TABLE2_SIGMA_ODD = [
    -21.9003, -7.9149, -3.6661, -2.0803, -1.4219, -1.1401, -1.0320, -1.0034,
    -0.9973, -0.9733, -0.8882, -0.7206, -0.4989, -0.2858, -0.1324, -0.0474,
]

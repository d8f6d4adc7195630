from __future__ import annotations

import os
from fractions import Fraction

DEFAULT_MAX_ATOMS = int(os.getenv("COHERENCE_MAX_ATOMS", "20"))
DEFAULT_LOG_LEVEL = os.getenv("COHERENCE_LOG_LEVEL", "WARNING")

# Working precision (significant digits) for generic Frank parameters.
FRANK_PRECISION = 60

# Below this distance from 1 the generic Frank formula is replaced by the product.
PRODUCT_LIMIT_TOLERANCE = 1e-9

LAMBDA_RESIDUAL_TOLERANCE = 1e-12
LAMBDA_MAX_BISECTIONS = 200

# Probe offset used to certify extension endpoints and the bisection tolerance.
EXTENSION_EPSILON = Fraction(1, 10**9)

SIMPLEX_MAX_PIVOTS = 10_000

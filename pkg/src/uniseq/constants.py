"""Scale constants shared across the package."""

import math

# Scale constants for the two models: partitions / strongly unimodal
# sequences use A, unimodal sequences use B.
A = math.sqrt(6.0) / math.pi
B = math.sqrt(3.0) / math.pi

EULER_GAMMA = 0.5772156649015329

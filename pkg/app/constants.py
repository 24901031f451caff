# Default thresholds. The CLI and the service override them per request.
DEFAULT_GROUP_CAP = 100_000
DEFAULT_SEARCH_BUDGET = 10_000_000
DEFAULT_ORACLE_MAX_CANDIDATES = 1_000_000
DEFAULT_PRODUCT_DEPTH = 6
GEOMETRIC_Q_MAX = 13
GEOMETRIC_N_MAX = 6
# Brute-force automorphism enumeration walks a!·b! pairs.
BRUTE_FORCE_MAX_SIDE = 6

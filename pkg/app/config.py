SCHEMA_VERSION = "1"

# Subsets are Python int bit-sets; bit i-1 stands for marked point i.
MAX_POINTS = 16
MIN_POINTS = 4

# Curve enumeration refuses larger n unless --force is given.
LARGE_N_GUARD = 14

DEFAULT_MAX_DENOMINATOR = 30
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 0
DEFAULT_JOBS = 1

# Number of leading restricted-growth-string labels fixed per parallel chunk.
CHUNK_PREFIX_LENGTH = 6

# Rejection sampling gives up after this many draws per requested datum.
MAX_SAMPLE_ATTEMPTS = 10000

# The Picard-rank check runs once per n inside this range.
RANK_N_RANGE = (5, 8)


def validate_config():
    if MIN_POINTS < 4:
        raise ValueError("MIN_POINTS must be at least 4")
    if MAX_POINTS < 16:
        raise ValueError("MAX_POINTS must be at least 16")
    if not MIN_POINTS <= LARGE_N_GUARD <= MAX_POINTS:
        raise ValueError("LARGE_N_GUARD must lie between MIN_POINTS and MAX_POINTS")
    if DEFAULT_MAX_DENOMINATOR < 2:
        raise ValueError("DEFAULT_MAX_DENOMINATOR must be at least 2")
    if CHUNK_PREFIX_LENGTH < 1:
        raise ValueError("CHUNK_PREFIX_LENGTH must be positive")

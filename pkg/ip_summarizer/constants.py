"""Constants for ip_summarizer."""

# IPv4 geometry
MAX_MASK = 32
ALL_ONES = (1 << MAX_MASK) - 1
OCTET_MAX = 255

# Granularity → (Distance threshold in bits, Density threshold)
GRANULARITY_THRESHOLDS = {
    0: (4, 1e-5),
    1: (8, 1e-6),
    2: (12, 1e-7),
    3: (16, 1e-8),
}
GRANULARITIES = tuple(sorted(GRANULARITY_THRESHOLDS))

# Curves fitted through the threshold table (documentation only)
DISTANCE_INTERPOLATION_SLOPE = 4
DISTANCE_INTERPOLATION_OFFSET = 4
DENSITY_INTERPOLATION_SCALE = 1e-5
DENSITY_INTERPOLATION_RATE = 2.303

# Summarization defaults (mask 8 and below never summarizes)
DEFAULT_GRANULARITY = 1
DEFAULT_MIN_SUBNET_MASK = 8

# ── Directory simulation ───────────────────────────────────────────────
MODE_DISTRIBUTED = "distributed"
MODE_SINGLE = "single"
MODE_BOTH = "both"
SIMULATION_MODES = (MODE_DISTRIBUTED, MODE_SINGLE, MODE_BOTH)

SINGLE_REGISTRY_NAME = "single"
FINAL_ROW_NAME = "Final"

# Registry labels used by the synthetic test bed
TESTBED_REGISTRY_NAMES = (
    "APAN", "ESnet", "FCCN", "GARR", "GEANT",
    "Internet2", "Indiana", "PIONIER", "SWITCH",
)

# ── Input / output ─────────────────────────────────────────────────────
COMMENT_PREFIX = "#"
MANIFEST_SEPARATOR = "="
ADDRESS_FILE_SUFFIX = ".txt"
MANIFEST_FILE_NAME = "registries.manifest"

FORMAT_TABLE = "table"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
OUTPUT_FORMATS = (FORMAT_TABLE, FORMAT_JSON, FORMAT_CSV)

NOT_A_VALUE = "n/a"
RATE_DECIMALS = 8

# Process exit codes
EXIT_OK = 0
EXIT_USAGE = 2

SCHEMA_VERSION = "1.0"
DEFAULT_NODE_BUDGET = 10**8
MIN_NODE_BUDGET = 10**4
DEFAULT_WORKERS = 1
DEFAULT_PMAX = 200
DEFAULT_PAIR_PRODUCT_MAX = 400
MIN_PMAX = 2
DESK_MAX_M = 2
DEFAULT_SWEEP_MAX_VERTICES = 8
DEFAULT_SWEEP_MAX_WEIGHT = 24
NORM_FLOOR = 8
NORM_FLOOR_ENTRY_BOUND = 3
# budget flush granularity inside the column search
BUDGET_CHUNK = 4096

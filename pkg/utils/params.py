# Poset families accepted by `generate`
VALID_FAMILIES = [
    "boolean",
    "cube",
    "crosspolytope",
    "polygon",
    "chain",
    "dual-of"
]

# Invariants accepted by `compute`
VALID_INVARIANTS = [
    "flag-f",
    "flag-h",
    "flag-L",
    "cd-index",
    "toric-f",
    "toric-g",
    "toric-h",
    "st"
]

VALID_SUITES = [
    "four-routes",
    "reflection",
    "bases",
    "dual-simplicial",
    "table1",
    "gessel",
    "appendix",
    "structural",
    "all"
]

VALID_FORMATS = ["json", "table"]

# Rank sets are bitmasks over [1, n]
MAX_RANK = 62

# Sign-vector oracles enumerate all 2^n vectors
ORACLE_MAX_N = 20

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2

# t_{n,i}(x) expanded in the t-basis: (n, i) -> {m: coefficient of t_m}
T_TABLE = {
    (1, 0): {1: 1},
    (2, 0): {2: 1, 0: -1},
    (2, 1): {0: 1},
    (3, 0): {3: 1, 1: -2},
    (3, 1): {1: 1},
    (3, 2): {1: 1},
    (4, 0): {4: 1, 2: -3},
    (4, 1): {2: 1, 0: -1},
    (4, 2): {2: 1, 0: 1},
    (4, 3): {2: 1},
    (5, 0): {5: 1, 3: -4},
    (5, 1): {3: 1, 1: -3},
    (5, 2): {3: 1, 1: 1},
    (5, 3): {3: 1, 1: 2},
    (5, 4): {3: 1},
}

CONFIG_PATH = "config/suites.yaml"

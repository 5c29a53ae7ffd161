"""
This file contains a variety of constants used throughout the package.
Constants specific to only one file should be stored there, and only shared
here.

Author(s): David Marchant
"""
import os

from inspect import signature

# validation
CHAR_LOWERCASE = 'abcdefghijklmnopqrstuvwxyz'
CHAR_UPPERCASE = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'
CHAR_NUMERIC = '0123456789'

VALID_NAME_CHARS = CHAR_UPPERCASE + CHAR_LOWERCASE + CHAR_NUMERIC + "_-"

VALID_SUITE_NAME_CHARS = CHAR_LOWERCASE + "_"
VALID_PATH_CHARS = VALID_NAME_CHARS + "." + os.path.sep

# enumeration
ENUMERATION_CAP = 10**7
EXPANSION_STEP_CAP = 64

# dimension
DEFAULT_DIMENSION_TOLERANCE = 1e-14
DIMENSION_CONSISTENCY_TOLERANCE = 1e-10
DIMENSION_MAX_ITERATIONS = 200

# measure
DEFAULT_MAX_DEPTH = 60
DEFAULT_MEASURE_TOLERANCE = 1e-10
# Number of interval endpoints evaluated together by the batched evaluator
BATCH_SIZE = 1 << 17

# packing
DEFAULT_GENERATION = 2
DEFAULT_RADII = 64
DEFAULT_BUDGET = 2000
DEFAULT_GAP = 1e-3
DEFAULT_PRUNE_DEPTH = 8
PACKING_LIMIT = 2

# verify
DEFAULT_SUITE_TOLERANCE = 1e-8
DEFAULT_SUITE_SAMPLES = 100
CLOSED_FORM_SLACK = 1e-9

# cli
THREADS_ENV_VAR = "GAUSS_PACKING_THREADS"
FORMAT_CSV = "csv"
FORMAT_JSON_LINES = "json-lines"
FORMAT_HUMAN = "human"
VALID_FORMATS = [FORMAT_CSV, FORMAT_JSON_LINES, FORMAT_HUMAN]

COMMAND_DIMENSION = "dimension"
COMMAND_MEASURE = "measure"
COMMAND_DENSITY = "density"
COMMAND_DMIN = "dmin"
COMMAND_SWEEP = "sweep"
COMMAND_VERIFY = "verify"
VALID_COMMANDS = [
    COMMAND_DIMENSION,
    COMMAND_MEASURE,
    COMMAND_DENSITY,
    COMMAND_DMIN,
    COMMAND_SWEEP,
    COMMAND_VERIFY
]

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_VERIFY_FAILED = 3

SWEEP_CSV_HEADER = [
    "n",
    "h",
    "dmin_upper",
    "dmin_lower",
    "packing_lower",
    "packing_upper",
    "witness_center",
    "witness_radius"
]

# debug printing levels
DEBUG_ERROR = 1
DEBUG_WARNING = 2
DEBUG_INFO = 3
DEBUG_DEBUG = 4

DEBUG_NAMES = {
    DEBUG_ERROR: "ERROR",
    DEBUG_WARNING: "WARNING",
    DEBUG_INFO: "INFO",
    DEBUG_DEBUG: "DEBUG"
}

# debug message functions
def get_drt_imp_msg(base_class):
    return f"{base_class.__name__} may not be instantiated directly. " \
        f"Implement a child class."

def get_not_imp_msg(parent_class, class_function):
    return f"Children of the '{parent_class.__name__}' class must implement " \
        f"the '{class_function.__name__}({signature(class_function)})' " \
        "function"

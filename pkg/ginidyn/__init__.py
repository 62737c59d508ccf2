import os

NAME_DEBUG_FILE = f"ginidyn-debug-{os.getpid()}.log"
NAME_LOG_ENVVAR = "GINIDYN_LOG"

PATH_INSTDIR = os.path.dirname(__file__)
PATH_SCHEMES = os.path.join(PATH_INSTDIR, "schemes")
PATH_DEFAULT_CONFIGS = os.path.join(PATH_INSTDIR, "config")

# validation tolerances, overridable through the simulate/verify configs
DEFAULT_TOL_MASS = 1e-9
DEFAULT_TOL_NEG = 1e-12
DEFAULT_TOL_MEAN = 1e-9
DEFAULT_TAIL_WARN = 1e-8

# a bound passes when rhs - lhs >= -SLACK_TOL
SLACK_TOL = 1e-12
# a mean closer than this to an integer is handled as that integer
INTEGER_TOL = 1e-9
# reports with slack below this are kept as tightness witnesses
WITNESS_TOL = 1e-9

# CSV cells use 17 significant digits, enough to round-trip any double
FLOAT_FORMAT = ".17g"

"""Named numerical constants. Several are part of the output contract and are
echoed into CLI metadata."""

MAX_SYMBOL_INDEX = 32
MAX_POWER = 16

# tube geometry
R_MAX = 30.0

# radial integrator
RK_RTOL = 1e-10
RK_ATOL = 1e-15
R_FLOOR = 1e-9
T_EXT_TOL = 1e-10
SPEED_BLOWUP = 1e6

# lifetime quadrature
QUAD_DELTA_MAX = 1e-2
QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-13
PANEL_TOL = 1e-12
PANEL_STREAK = 8
PANEL_SLACK = 1e-3
PANEL_MAX = 1000
EXPONENT_GRID = (1e-6, 1e-3, 20)
INFINITE_EXPONENT_CUTOFF = -1 + 0.1

# parabolicity sampling
PARABOLIC_RANGE = (0.05, 20.0)
FIRST_ORDER_TOL = 1e-9
DEFAULT_SEED = 0

# surfaces
BLOWUP_H_THRESHOLD = 1e3
ENVELOPE_EPS = 1e-9
DEFAULT_CORE_LENGTH = 0.6931471805599453  # ln 2
ENVELOPE_OUT_STEP = 0.1

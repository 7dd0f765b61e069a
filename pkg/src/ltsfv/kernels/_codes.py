"""Integer codes shared by the numba and numpy kernel backends."""

SCHEME_ROE = 0
SCHEME_LXF = 1
SCHEME_ROELXF = 2
SCHEME_ROESTAR = 3

FLUX_BURGERS = 0
FLUX_ADVECTION = 1

#: Slack on per-interface CFL rejection inside the kernels.
CFL_SLACK = 1e-8

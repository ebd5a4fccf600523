"""
Constants useful across modules.

Lengths are dimensionless throughout: transverse coordinates are measured in
units of the waist of a reference beam and the longitudinal coordinate in
units of that beam's Rayleigh range.
In these units the wavenumber is 2 and a beam of waist ``w0`` has Rayleigh
range ``w0**2``.
"""

import pandas as pd

#: Wavenumber in reference units, fixed by L = k * w0**2 / 2 with w0 = L = 1
WAVENUMBER = 2.0

#: Default waist of every catalog beam
DEFAULT_W0 = 1.0

#: Default grid sample counts
DEFAULT_NX = 512
DEFAULT_NY = 512

#: Environment variable that may override the default grid sample counts
GRID_DEFAULT_ENV = "CEBEAM_GRID_DEFAULT"

#: Default grid half-width in multiples of the largest length scale of a beam
EXTENT_FACTOR = 8.0

#: Gram eigenvalues below this fraction of the trace are discarded
GRAM_TRUNCATION = 1e-12

#: Gram eigenvalues below minus this fraction of the trace are a failure
GRAM_NEGATIVE_TOLERANCE = 1e-10

#: Relative gap below which two Schmidt weights count as degenerate
DEGENERACY_TOLERANCE = 1e-10

#: Valid beam families
FAMILIES = ["pp", "fourfold", "ps", "radial", "ghz", "w", "noon"]

#: Valid parties of a tripartite tensor
PARTIES = ["pol", "x", "y"]

# Record the parameters of every beam family.
# The columns mirror those of a table reference: which family a parameter
# belongs to, whether it is required, its type and its default.
columns = ["family", "parameter", "parameter_required", "dtype", "default"]
rows = [
    ["pp", "a", True, "float", None],
    ["pp", "w0", False, "float", DEFAULT_W0],
    ["fourfold", "a", True, "float", None],
    ["fourfold", "b", True, "float", None],
    ["fourfold", "A", False, "complex4", [1, 1, 1, 1]],
    ["fourfold", "allow_overlap", False, "bool", False],
    ["ps", "A", True, "complex4", None],
    ["ps", "w0", False, "float", DEFAULT_W0],
    ["radial", "w0", False, "float", DEFAULT_W0],
    ["ghz", "w0", False, "float", DEFAULT_W0],
    ["w", "w0", False, "float", DEFAULT_W0],
    ["noon", "N", True, "int", None],
    ["noon", "theta", False, "float", 0.0],
    ["noon", "w0", False, "float", DEFAULT_W0],
]
FAMILY_REF = pd.DataFrame(rows, columns=columns)

#: Grid parameters accepted alongside the beam parameters of any family
GRID_PARAMS = ["nx", "ny", "extent", "z"]

#: Header written as the first line of a field CSV dump
FIELD_CSV_MAGIC = "# cebeam-field v1"

#: Header written as the first line of a Stokes CSV dump
STOKES_CSV_MAGIC = "# cebeam-stokes v1"

#: Columns of a field CSV dump
FIELD_CSV_COLUMNS = ["x", "y", "re_ex", "im_ex", "re_ey", "im_ey"]

#: Columns of a Stokes CSV dump
STOKES_CSV_COLUMNS = ["x", "y", "s0", "s1", "s2", "s3"]

#: Float format giving 17 significant digits
FLOAT_FORMAT = "%.16e"

#: Largest sample value of a 16-bit PGM image
PGM_MAXVAL = 65535

#: Keys of an analysis report, in output order
REPORT_KEYS = [
    "family",
    "params",
    "lambda1",
    "lambda2",
    "K",
    "residual",
    "covariance",
    "dop",
    "total_intensity",
]

#: CLI exit codes
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

#: The field each beam family instantiates
FAMILY_FORMULAS = {
    "pp": "e_H U(x, y - a, z) + e_V U(x, y + a, z)",
    "fourfold": "e_H [A00 R00 + A01 R01 + A10 R10 + A11 R11], "
    "Rij = rect((y - (-1)^i a) / b) rect((x + (-1)^j a) / b)",
    "ps": "A00 e_H U10 + A01 e_H U01 + A10 e_V U10 + A11 e_V U01",
    "radial": "e_H U10 + e_V U01",
    "ghz": "(e_H U00 + e_V U11) / sqrt(2)",
    "w": "(e_H U01 + e_H U10 + e_V U00) / sqrt(3)",
    "noon": "e_H (U_N0 + exp(i N theta) U_0N) / sqrt(2)",
    "custom": "sum of coefficient x Jones vector x scalar mode",
}

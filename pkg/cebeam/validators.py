"""
Functions about validation of beam configurations.

Checkers append problems to a list, each problem being a list of the form
``[type, message, field, values]``, where

1. ``type`` is ``'error'`` or ``'warning'``; an error means the
   configuration cannot be built, a warning means it can but the results may
   be inaccurate
2. ``message`` describes the problem
3. ``field`` names the configuration field in which the problem occurs,
   e.g. ``'w0'``
4. ``values`` lists the offending values

"""
from __future__ import annotations
from typing import Union, TYPE_CHECKING
import math
import logging

import numpy as np
import pandas as pd
from pandas import DataFrame

from . import constants as cs
from . import helpers as hp

if TYPE_CHECKING:
    from .config import BeamConfig


logger = logging.getLogger(__name__)


def valid_float(x) -> bool:
    """
    Return ``True`` if ``x`` is a finite real number (booleans and strings
    excluded); otherwise return ``False``.
    """
    if isinstance(x, (bool, str, bytes)):
        return False
    try:
        return math.isfinite(float(x))
    except (TypeError, ValueError):
        return False


def valid_positive(x) -> bool:
    return valid_float(x) and float(x) > 0


def valid_nonnegative(x) -> bool:
    return valid_float(x) and float(x) >= 0


def valid_int(x) -> bool:
    """
    Return ``True`` if ``x`` is an integer or an integral float;
    otherwise return ``False``.
    """
    return valid_float(x) and float(x) == int(float(x))


def valid_bool(x) -> bool:
    return isinstance(x, bool)


def valid_complex4(x) -> bool:
    """
    Return ``True`` if ``x`` holds four coefficients readable by
    :func:`.helpers.parse_coefficients`; otherwise return ``False``.
    """
    try:
        hp.parse_coefficients(x)
        return True
    except (hp.InvalidParameterError, TypeError):
        return False


CHECKERS = {
    "float": valid_float,
    "int": valid_int,
    "bool": valid_bool,
    "complex4": valid_complex4,
}


def format_problems(problems: list, *, as_df: bool = False) -> Union[list, DataFrame]:
    """
    Format the given problems list as a DataFrame.

    Parameters
    ----------
    problems : list
        Items of the form ``[type, message, field, values]``
    as_df : boolean

    Returns
    -------
    list or DataFrame
        Return ``problems`` if not ``as_df``; otherwise return a
        DataFrame with the problems as rows and the columns
        ``['type', 'message', 'field', 'values']``.

    """
    if as_df:
        problems = pd.DataFrame(
            problems, columns=["type", "message", "field", "values"]
        ).sort_values(["type", "field"], kind="stable")
    return problems


def check_param(
    problems: list,
    params: dict,
    param: str,
    checker,
    message: str = None,
    type_: str = "error",
) -> list:
    """
    Apply the given boolean checker to ``params[param]``, if present, and
    append the item ``[type_, message, param, [value]]`` to the problems
    list if the checker returns ``False``.
    Return the problems list.
    """
    if param not in params:
        return problems
    value = params[param]
    if not checker(value):
        if not message:
            message = f"Invalid {param}"
        problems.append([type_, message, param, [value]])
    return problems


def check_family(problems: list, config: "BeamConfig") -> list:
    if config.family not in cs.FAMILIES:
        problems.append(
            ["error", f"Family must lie in {cs.FAMILIES}", "family", [config.family]]
        )
    return problems


def check_for_required_params(problems: list, config: "BeamConfig") -> list:
    """
    Append one error to the problems list for every parameter that
    :const:`.constants.FAMILY_REF` marks as required for the configured
    family but that is missing from the configuration.
    """
    r = cs.FAMILY_REF
    required = r.loc[
        (r["family"] == config.family) & r["parameter_required"], "parameter"
    ].values
    for param in required:
        if param not in config.params:
            problems.append(["error", f"Missing parameter {param}", param, []])
    return problems


def check_for_invalid_params(problems: list, config: "BeamConfig") -> list:
    """
    Append one error to the problems list for every parameter of the
    configuration that the configured family does not accept.
    """
    r = cs.FAMILY_REF
    valid = set(r.loc[r["family"] == config.family, "parameter"].values)
    for param in config.params:
        if param not in valid:
            problems.append(
                [
                    "error",
                    f"Parameter {param} does not apply to family {config.family}",
                    param,
                    [config.params[param]],
                ]
            )
    return problems


def check_param_types(problems: list, config: "BeamConfig") -> list:
    """
    Check every parameter against the type recorded in
    :const:`.constants.FAMILY_REF` and against its range: waists, spot
    widths and extents are positive, displacements non-negative, the NOON
    order at least 1.
    """
    r = cs.FAMILY_REF
    f = r.loc[r["family"] == config.family]
    params = config.params
    for param, dtype in f[["parameter", "dtype"]].itertuples(index=False):
        check_param(problems, params, param, CHECKERS[dtype], f"Invalid {dtype} {param}")

    check_param(problems, params, "w0", valid_positive, "Waist must be positive")
    check_param(problems, params, "b", valid_positive, "Spot width must be positive")
    check_param(problems, params, "a", valid_nonnegative, "Displacement must be >= 0")
    if "N" in params and valid_int(params["N"]):
        check_param(problems, params, "N", lambda x: x >= 1, "N must be at least 1")
    return problems


def check_geometry(problems: list, config: "BeamConfig") -> list:
    """
    For fourfold beams, append an error if the spots overlap, that is, if
    ``b >= 2 * a`` and overlap is not allowed.
    """
    params = config.params
    if config.family != "fourfold":
        return problems
    a, b = params.get("a"), params.get("b")
    if not (valid_nonnegative(a) and valid_positive(b)):
        return problems
    if not params.get("allow_overlap", False) and not b < 2 * a:
        problems.append(["error", "Spots overlap unless b < 2a", "b", [b]])
    return problems


def check_grid(
    problems: list, config: "BeamConfig", *, include_warnings: bool = False
) -> list:
    """
    Check the grid fields of the given configuration.
    Sample counts must be integers at least 2, the extent positive (or
    unset) and ``z`` finite.

    If ``include_warnings``, then also warn when

    - the extent is under half its default for the configured beam, which
      truncates the tails of the field
    - a fourfold beam's spot edges miss the grid nodes, which spoils the
      exactness of the quadrature of rect spots

    """
    for key in ["nx", "ny"]:
        value = getattr(config, key)
        if not (valid_int(value) and value >= 2):
            problems.append(["error", f"{key} must be an integer >= 2", key, [value]])
    if config.extent is not None and not valid_positive(config.extent):
        problems.append(["error", "Extent must be positive", "extent", [config.extent]])
    if not valid_float(config.z):
        problems.append(["error", "z must be finite", "z", [config.z]])

    if not include_warnings or any(p[0] == "error" for p in problems):
        return problems

    scale = config.length_scale()
    if config.extent is not None and config.extent < cs.EXTENT_FACTOR / 2 * scale:
        problems.append(
            [
                "warning",
                "Extent may truncate the beam",
                "extent",
                [config.extent],
            ]
        )

    if config.family == "fourfold":
        grid = config.grid()
        a, b = float(config.params["a"]), float(config.params["b"])
        edges = np.array([s * a + t * b / 2 for s in (-1, 1) for t in (-1, 1)])
        off_x = (edges - grid.x_min) / grid.dx
        off_y = (edges - grid.y_min) / grid.dy
        tol = 1e-9
        if not (
            np.allclose(off_x, np.rint(off_x), atol=tol)
            and np.allclose(off_y, np.rint(off_y), atol=tol)
        ):
            problems.append(
                ["warning", "Spot edges miss the grid nodes", "b", edges.tolist()]
            )

    return problems


def validate_config(
    config: "BeamConfig", *, as_df: bool = True, include_warnings: bool = True
) -> Union[list, DataFrame]:
    """
    Check whether the given configuration can be built into a beam and a
    grid.

    Parameters
    ----------
    config : BeamConfig
    as_df : boolean
        If ``True``, then return the resulting report as a DataFrame;
        otherwise return the result as a list
    include_warnings : boolean
        If ``True``, then include problems of types ``'error'`` and
        ``'warning'``; otherwise, only return problems of type
        ``'error'``

    Returns
    -------
    list or DataFrame
        Run all the checkers above, yielding a possibly empty list of items
        [problem type, message, field, values].
        If ``as_df``, then format the list as a DataFrame with the columns

        - ``'type'``: 'error' or 'warning'
        - ``'message'``: description of the problem
        - ``'field'``: configuration field in which the problem occurs
        - ``'values'``: offending values

        Return early if the family is unknown.

    """
    problems = []
    check_family(problems, config)
    if problems:
        return format_problems(problems, as_df=as_df)

    check_for_required_params(problems, config)
    check_for_invalid_params(problems, config)
    check_param_types(problems, config)
    check_geometry(problems, config)
    check_grid(problems, config, include_warnings=include_warnings)

    for p in problems:
        if p[0] == "warning":
            logger.warning("%s: %s %s", p[2], p[1], p[3])

    return format_problems(problems, as_df=as_df)

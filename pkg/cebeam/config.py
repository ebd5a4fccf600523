"""
This module defines a BeamConfig class binding a beam family, its parameters
and a sampling grid, together with functions to read and write
configurations as JSON files.

A configuration file is a flat JSON object, e.g.

.. code-block:: json

    {"family": "pp", "a": 1.0, "w0": 1.0, "nx": 256, "ny": 256}

Complex coefficients are written as ``[re, im]`` pairs or as strings such as
``"1+2j"``.
"""
from __future__ import annotations
from pathlib import Path
from copy import deepcopy
from typing import Optional, Union
import json
import logging
import os

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg
from . import vector_beam as vb
from . import validators as vd


logger = logging.getLogger(__name__)


def grid_default() -> int:
    """
    Return the default number of samples per axis: the value of the
    environment variable :const:`.constants.GRID_DEFAULT_ENV` if set,
    otherwise :const:`.constants.DEFAULT_NX`.
    Raise an :class:`.helpers.InvalidParameterError` if the variable does
    not hold an integer at least 2.
    """
    value = os.environ.get(cs.GRID_DEFAULT_ENV)
    if value is None or not value.strip():
        return cs.DEFAULT_NX
    try:
        n = int(value)
    except ValueError:
        raise hp.InvalidParameterError(
            f"{cs.GRID_DEFAULT_ENV} must be an integer; got {value!r}"
        )
    if n < 2:
        raise hp.InvalidParameterError(f"{cs.GRID_DEFAULT_ENV} must be >= 2; got {n}")
    return n


def family_defaults(family: str) -> dict:
    """
    Return the defaults of the optional parameters of the given family as
    recorded in :const:`.constants.FAMILY_REF`.
    """
    r = cs.FAMILY_REF
    f = r.loc[(r["family"] == family) & ~r["parameter_required"]]
    return {p: deepcopy(d) for p, d in f[["parameter", "default"]].itertuples(index=False)}


def make_beam(family: str, params: dict) -> vb.VectorBeam:
    """
    Build the beam of the given family from the given parameters, filling
    in defaults for missing optional parameters.
    """
    p = {**family_defaults(family), **params}
    if family == "pp":
        return vb.make_pp_beam(float(p["a"]), float(p["w0"]))
    elif family == "fourfold":
        return vb.make_fourfold_beam(
            p["A"], float(p["a"]), float(p["b"]), allow_overlap=bool(p["allow_overlap"])
        )
    elif family == "ps":
        return vb.make_ps_beam(p["A"], float(p["w0"]))
    elif family == "radial":
        return vb.make_radial_beam(float(p["w0"]))
    elif family == "ghz":
        return vb.make_ghz_beam(float(p["w0"]))
    elif family == "w":
        return vb.make_w_beam(float(p["w0"]))
    elif family == "noon":
        return vb.make_noon_beam(int(p["N"]), float(p["theta"]), float(p["w0"]))
    raise hp.InvalidParameterError(f"Family must lie in {cs.FAMILIES}; got {family!r}")


class BeamConfig(object):
    """
    An instance of this class represents a not-necessarily-valid beam
    configuration.

    Primary instance attributes:

    - ``family``: a string in :const:`.constants.FAMILIES`
    - ``params``: dictionary of beam parameters, e.g. ``{'a': 1.0}``;
      optional parameters missing here take their defaults from
      :const:`.constants.FAMILY_REF`
    - ``nx``, ``ny``: sample counts, defaulting to :func:`grid_default`
    - ``extent``: grid half-width, or ``None`` for
      :const:`.constants.EXTENT_FACTOR` times the beam's largest length
      scale
    - ``z``: longitudinal position of the transverse plane

    Use :func:`.validators.validate_config` to list the problems of a
    configuration and :meth:`build` to obtain the beam and grid, which
    raises on the first error.
    """

    def __init__(
        self,
        family: str,
        params: Optional[dict] = None,
        nx: Optional[int] = None,
        ny: Optional[int] = None,
        extent: Optional[float] = None,
        z: float = 0.0,
    ):
        self.family = family
        self.params = dict(params or {})
        self.nx = grid_default() if nx is None else nx
        self.ny = grid_default() if ny is None else ny
        self.extent = extent
        self.z = z

    @property
    def family(self):
        """
        The beam family of this configuration.
        """
        return self._family

    @family.setter
    def family(self, val):
        if val not in cs.FAMILIES:
            raise hp.InvalidParameterError(
                f"Family is required and must lie in {cs.FAMILIES}; got {val!r}"
            )
        self._family = val

    def __str__(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def __eq__(self, other):
        """
        Define two configurations to be equal if and only if their
        dictionaries, defaults included, are equal.
        """
        if not isinstance(other, BeamConfig):
            return NotImplemented
        return self.to_dict(resolve=True) == other.to_dict(resolve=True)

    def copy(self) -> "BeamConfig":
        """
        Return a copy of this configuration.
        """
        return BeamConfig(
            self.family, deepcopy(self.params), self.nx, self.ny, self.extent, self.z
        )

    def resolved_params(self) -> dict:
        """
        Return the beam parameters with defaults filled in.
        """
        return {**family_defaults(self.family), **deepcopy(self.params)}

    def to_dict(self, *, resolve: bool = False) -> dict:
        """
        Return this configuration as a flat JSON-friendly dictionary.
        Complex values are written as ``[re, im]`` pairs.
        If ``resolve``, then include parameter defaults.
        """
        params = self.resolved_params() if resolve else deepcopy(self.params)
        if "A" in params:
            params["A"] = [
                hp.complex_to_pair(x) for x in hp.parse_coefficients(params["A"]).ravel()
            ]
        d = {"family": self.family, **params, "nx": self.nx, "ny": self.ny, "z": self.z}
        if self.extent is not None:
            d["extent"] = self.extent
        return d

    def update(self, **kwargs) -> "BeamConfig":
        """
        Return a copy of this configuration with the given fields replaced.
        Keywords in :const:`.constants.GRID_PARAMS` set grid fields, all
        others set beam parameters; ``None`` values are ignored.
        """
        other = self.copy()
        for key, value in kwargs.items():
            if value is None:
                continue
            if key == "family":
                other.family = value
            elif key in cs.GRID_PARAMS:
                setattr(other, key, value)
            else:
                other.params[key] = value
        return other

    def check(self) -> None:
        """
        Raise an :class:`.helpers.InvalidParameterError` listing every
        error found by :func:`.validators.validate_config`.
        """
        problems = vd.validate_config(self, as_df=False, include_warnings=False)
        if problems:
            details = "; ".join(f"{p[2]}: {p[1]}" for p in problems)
            raise hp.InvalidParameterError(f"Invalid configuration: {details}")

    def beam(self) -> vb.VectorBeam:
        """
        Build the beam of this configuration.
        """
        return make_beam(self.family, self.params)

    def length_scale(self) -> float:
        return vb.beam_length_scale(self.beam(), self.z)

    def grid(self) -> fg.FieldGrid:
        """
        Build the sampling grid of this configuration.
        """
        return vb.default_grid(
            self.beam(), int(self.nx), int(self.ny), float(self.z), self.extent
        )

    def build(self) -> tuple[vb.VectorBeam, fg.FieldGrid]:
        """
        Validate this configuration and return its beam and grid.
        """
        self.check()
        beam = self.beam()
        grid = vb.default_grid(beam, int(self.nx), int(self.ny), float(self.z), self.extent)
        logger.debug("Built %s beam on %s", beam.family, grid)
        return beam, grid

    def write(self, path: Union[str, Path]) -> None:
        """
        Write this configuration to the given path as a JSON file.
        """
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n")
        logger.info("Wrote configuration to %s", path)


# -------------------------------------
# Functions about input and output
# -------------------------------------
def config_from_dict(d: dict) -> BeamConfig:
    """
    Create a BeamConfig from a flat dictionary as written by
    :meth:`BeamConfig.to_dict`.
    """
    d = dict(d)
    if "family" not in d:
        raise hp.InvalidParameterError("Configuration lacks a family")
    family = d.pop("family")
    grid = {k: d.pop(k) for k in cs.GRID_PARAMS if k in d}
    return BeamConfig(family, d, **grid)


def read_config(path: Union[str, Path]) -> BeamConfig:
    """
    Create a BeamConfig from the given JSON file.
    Raise an :class:`.helpers.InvalidParameterError` if the file is not a
    JSON object, and an ``OSError`` if it cannot be read.
    """
    path = Path(path)
    try:
        d = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise hp.InvalidParameterError(f"Configuration {path} is not valid JSON: {e}")
    if not isinstance(d, dict):
        raise hp.InvalidParameterError(f"Configuration {path} is not a JSON object")
    return config_from_dict(d)

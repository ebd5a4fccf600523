"""
Functions about output: field and Stokes CSV dumps, 16-bit PGM intensity
images and JSON analysis reports.

All outputs are deterministic: the same field gives byte-identical files.
CSV rows run over the grid nodes in row-major order, ``y`` outer and
ascending, ``x`` inner and ascending.
"""
from __future__ import annotations
from pathlib import Path
from typing import Union, TYPE_CHECKING
import json
import logging

import numpy as np
import pandas as pd

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg
from . import vector_beam as vb
from . import schmidt_analysis as sa
from . import coherence as ch

if TYPE_CHECKING:
    from .config import BeamConfig


logger = logging.getLogger(__name__)


def _write_csv(df: pd.DataFrame, magic: str, z: float, path: Union[str, Path]) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        f.write(f"{magic} z={float(z)!r}\n")
        df.to_csv(f, index=False, float_format=cs.FLOAT_FORMAT, lineterminator="\n")
    logger.info("Wrote %s rows to %s", df.shape[0], path)


def field_table(field: fg.SampledVectorField) -> pd.DataFrame:
    """
    Return the given field as a DataFrame with the columns
    :const:`.constants.FIELD_CSV_COLUMNS`, one row per grid node.
    """
    X, Y = field.grid.mesh()
    return pd.DataFrame(
        {
            "x": X.ravel(),
            "y": Y.ravel(),
            "re_ex": field.ex.real.ravel(),
            "im_ex": field.ex.imag.ravel(),
            "re_ey": field.ey.real.ravel(),
            "im_ey": field.ey.imag.ravel(),
        },
        columns=cs.FIELD_CSV_COLUMNS,
    )


def dump_field_csv(field: fg.SampledVectorField, path: Union[str, Path]) -> None:
    """
    Write the given field to the given path as a UTF-8 CSV file whose first
    line is ``# cebeam-field v1 z=<z>``, second line the header
    ``x,y,re_ex,im_ex,re_ey,im_ey`` and remaining lines the grid nodes with
    17 significant digits.
    """
    _write_csv(field_table(field), cs.FIELD_CSV_MAGIC, field.grid.z, path)


def _read_magic(path: Path, magic: str) -> float:
    with path.open("r", encoding="utf-8") as f:
        line = f.readline().rstrip("\n")
    if not line.startswith(magic + " z="):
        raise hp.InvalidParameterError(f"{path} does not start with {magic!r}")
    try:
        return float(line[len(magic) + 3 :])
    except ValueError:
        raise hp.InvalidParameterError(f"Bad z value in the first line of {path}")


def read_field_csv(path: Union[str, Path]) -> fg.SampledVectorField:
    """
    Read a field written by :func:`dump_field_csv` and return it.
    The values read equal the values written bit for bit.
    """
    path = Path(path)
    z = _read_magic(path, cs.FIELD_CSV_MAGIC)
    f = pd.read_csv(path, skiprows=1, float_precision="round_trip")
    if list(f.columns) != cs.FIELD_CSV_COLUMNS:
        raise hp.InvalidParameterError(
            f"Expected columns {cs.FIELD_CSV_COLUMNS}; got {list(f.columns)}"
        )

    xs = np.unique(f["x"].values)
    ys = np.unique(f["y"].values)
    nx, ny = xs.size, ys.size
    if f.shape[0] != nx * ny:
        raise hp.InvalidParameterError(f"{path} does not hold a full grid")
    grid = fg.FieldGrid(nx, ny, xs[0], xs[-1], ys[0], ys[-1], z)

    def get(col):
        return f[col].values.reshape(grid.shape)

    return fg.SampledVectorField(
        grid, get("re_ex") + 1j * get("im_ex"), get("re_ey") + 1j * get("im_ey")
    )


def intensity_image(field: fg.SampledVectorField) -> np.ndarray:
    """
    Return the intensity of the given field mapped linearly from 0 to
    its peak onto ``0, ..., PGM_MAXVAL``, as an unsigned 16-bit array with
    the largest ``y`` in the top row.
    A zero field gives an all-zero image.
    """
    I = field.intensity()
    peak = I.max()
    if peak > 0:
        scaled = np.rint(I / peak * cs.PGM_MAXVAL)
    else:
        scaled = np.zeros_like(I)
    return np.flipud(scaled).astype(np.uint16)


def render_intensity_pgm(field: fg.SampledVectorField, path: Union[str, Path]) -> None:
    """
    Write the intensity image of the given field, see
    :func:`intensity_image`, to the given path as a binary PGM file
    (magic ``P5``, maxval 65535, big-endian samples).
    """
    path = Path(path)
    img = intensity_image(field)
    height, width = img.shape
    header = f"P5\n{width} {height}\n{cs.PGM_MAXVAL}\n".encode("ascii")
    with path.open("wb") as f:
        f.write(header + img.astype(">u2").tobytes())
    logger.info("Wrote %sx%s image to %s", width, height, path)


def read_pgm(path: Union[str, Path]) -> np.ndarray:
    """
    Read a 16-bit binary PGM file as written by :func:`render_intensity_pgm`
    and return its samples as an unsigned 16-bit array of shape
    ``(height, width)``.
    """
    data = Path(path).read_bytes()
    # Header: magic, dimensions and maxval on three lines
    parts = data.split(b"\n", 3)
    if len(parts) < 4 or parts[0] != b"P5":
        raise hp.InvalidParameterError(f"{path} is not a binary PGM file")
    width, height = (int(x) for x in parts[1].split())
    maxval = int(parts[2])
    if maxval != cs.PGM_MAXVAL:
        raise hp.InvalidParameterError(f"Expected maxval {cs.PGM_MAXVAL}; got {maxval}")
    return np.frombuffer(parts[3], dtype=">u2").reshape(height, width).astype(np.uint16)


def stokes_table(field: fg.SampledVectorField) -> pd.DataFrame:
    """
    Return the Stokes parameters of the given field at every grid node as
    a DataFrame with the columns

    - ``'x'``, ``'y'``: node coordinates
    - ``'s0'``: ``|E_H|**2 + |E_V|**2``
    - ``'s1'``: ``|E_H|**2 - |E_V|**2``
    - ``'s2'``: ``2 Re(conj(E_H) E_V)``
    - ``'s3'``: ``2 Im(conj(E_H) E_V)``

    in the row order of :func:`dump_field_csv`.
    """
    X, Y = field.grid.mesh()
    ih, iv = np.abs(field.ex) ** 2, np.abs(field.ey) ** 2
    cross = 2 * np.conj(field.ex) * field.ey
    return pd.DataFrame(
        {
            "x": X.ravel(),
            "y": Y.ravel(),
            "s0": (ih + iv).ravel(),
            "s1": (ih - iv).ravel(),
            "s2": cross.real.ravel(),
            "s3": cross.imag.ravel(),
        },
        columns=cs.STOKES_CSV_COLUMNS,
    )


def polarization_ellipse(stokes: pd.DataFrame) -> pd.DataFrame:
    """
    Given a Stokes table as output by :func:`stokes_table`, return it with
    the extra columns

    - ``'psi'``: orientation angle ``atan2(s2, s1) / 2`` of the polarization
      ellipse, in radians
    - ``'chi'``: ellipticity angle ``asin(s3 / s0) / 2``, in radians; 0 where
      ``s0`` vanishes

    """
    f = stokes.copy()
    s0 = f["s0"].values
    ratio = np.divide(f["s3"].values, s0, out=np.zeros_like(s0), where=s0 > 0)
    f["psi"] = 0.5 * np.arctan2(f["s2"].values, f["s1"].values)
    f["chi"] = 0.5 * np.arcsin(np.clip(ratio, -1, 1))
    return f


def render_stokes_csv(field: fg.SampledVectorField, path: Union[str, Path]) -> None:
    """
    Write the Stokes table of the given field to the given path as a CSV
    file in the layout of :func:`dump_field_csv`, with first line
    ``# cebeam-stokes v1 z=<z>``.
    """
    _write_csv(stokes_table(field), cs.STOKES_CSV_MAGIC, field.grid.z, path)


def _jsonable(value):
    if isinstance(value, (complex, np.complexfloating)):
        return hp.complex_to_pair(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def analyze(
    beam: vb.VectorBeam, grid: fg.FieldGrid
) -> tuple[sa.SchmidtResult, ch.CovarianceMatrix, float, float]:
    """
    Run the Schmidt decomposition and the coherence analysis of the given
    beam on the given grid and return the tuple
    ``(Schmidt result, covariance matrix, degree of polarization, total
    intensity)``.
    """
    schmidt = sa.schmidt_decompose(beam, grid)
    cov = ch.covariance_matrix(ch.coherence_density(beam, grid))
    dop = ch.degree_of_polarization(cov)
    return schmidt, cov, dop, vb.total_intensity(beam, grid)


def build_report(config: "BeamConfig") -> dict:
    """
    Validate the given configuration, analyze its beam and return the
    analysis report as a dictionary with the keys
    :const:`.constants.REPORT_KEYS`:

    - ``'family'``: beam family
    - ``'params'``: beam and grid parameters, defaults and the resolved
      extent included
    - ``'lambda1'``, ``'lambda2'``, ``'K'``, ``'residual'``: Schmidt weights,
      Schmidt number and reconstruction residual
    - ``'covariance'``: covariance matrix as 8 reals, ``re, im`` of each
      entry in row-major order
    - ``'dop'``: degree of polarization
    - ``'total_intensity'``

    """
    beam, grid = config.build()
    schmidt, cov, dop, total = analyze(beam, grid)
    params = {
        k: _jsonable(v)
        for k, v in config.to_dict(resolve=True).items()
        if k != "family"
    }
    params["extent"] = grid.x_max
    report = {
        "family": beam.family,
        "params": dict(sorted(params.items())),
        "lambda1": schmidt.lambda1,
        "lambda2": schmidt.lambda2,
        "K": schmidt.K,
        "residual": schmidt.residual,
        "covariance": cov.as_pairs(),
        "dop": dop,
        "total_intensity": total,
    }
    return {key: report[key] for key in cs.REPORT_KEYS}


def report_to_json(report: dict) -> str:
    """
    Serialize the given report deterministically.
    """
    return json.dumps(report, indent=2) + "\n"


def describe_report(report: dict) -> pd.DataFrame:
    """
    Return a DataFrame of the scalar indicators of the given report, with
    the columns

    - ``'indicator'``: string; name of an indicator, e.g. 'K'
    - ``'value'``: value of the indicator, e.g. 2.0

    """
    d = dict()
    d["family"] = report["family"]
    for key, value in report["params"].items():
        d[f"param_{key}"] = value
    for key in ["lambda1", "lambda2", "K", "residual", "dop", "total_intensity"]:
        d[key] = report[key]
    c = report["covariance"]
    for k, name in enumerate(["J_HH", "J_HV", "J_VH", "J_VV"]):
        d[name] = complex(c[2 * k], c[2 * k + 1])
    return pd.DataFrame(list(d.items()), columns=["indicator", "value"])

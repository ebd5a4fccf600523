"""
Command-line interface.

Usage examples::

    cebeam make --beam pp --a 1 --out pp.csv
    cebeam schmidt --beam radial
    cebeam schmidt --beam noon --N 1 --partition xy --angle 45
    cebeam coherence --beam pp --a 3
    cebeam overlap --a 1 --w0 1
    cebeam render --beam w --out w.pgm --stokes w.csv
    cebeam tripartite --beam ghz

Results go to stdout and log records to stderr.
The exit code is 0 on success, 2 on an invalid configuration and 3 on a
numerical or I/O failure.
"""
from __future__ import annotations
from typing import Optional, Sequence
import argparse
import json
import logging
import math
import sys

import numpy as np

from . import constants as cs
from . import helpers as hp
from . import scalar_modes as sm
from . import vector_beam as vb
from . import schmidt_analysis as sa
from . import coherence as ch
from . import config as cf
from . import render as rd


logger = logging.getLogger(__name__)


def beam_parser() -> argparse.ArgumentParser:
    """
    Return the parent parser of the beam and grid flags shared by every
    subcommand.
    """
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("beam")
    g.add_argument("--config", help="JSON configuration file; flags override it")
    g.add_argument("--beam", choices=cs.FAMILIES, help="beam family")
    g.add_argument("--a", type=float, help="half-separation of spots")
    g.add_argument("--b", type=float, help="width of rect spots")
    g.add_argument("--w0", type=float, help="waist")
    g.add_argument("--N", type=int, help="order of a NOON beam")
    g.add_argument("--theta", type=float, help="phase angle of a NOON beam, radians")
    g.add_argument(
        "--A", nargs=4, metavar="Aij", help="coefficients A00 A01 A10 A11, e.g. 1+2j"
    )
    g.add_argument(
        "--allow-overlap",
        action="store_true",
        default=None,
        help="allow overlapping rect spots",
    )
    g = p.add_argument_group("grid")
    g.add_argument("--nx", type=int, help="samples along x")
    g.add_argument("--ny", type=int, help="samples along y")
    g.add_argument("--extent", type=float, help="grid half-width")
    g.add_argument("--z", type=float, help="longitudinal position")
    p.add_argument("-v", "--verbose", action="store_true", help="log debug records")
    return p


def build_parser() -> argparse.ArgumentParser:
    parent = beam_parser()
    parser = argparse.ArgumentParser(
        prog="cebeam", description="Build and analyze classically entangled beams."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make", parents=[parent], help="list the terms of a beam")
    p.add_argument("--out", help="dump the sampled field to this CSV file")

    p = sub.add_parser("schmidt", parents=[parent], help="Schmidt decomposition")
    p.add_argument("--partition", choices=["pol", "xy"], default="pol")
    p.add_argument(
        "--angle", type=float, default=0.0, help="frame rotation in degrees (xy only)"
    )

    sub.add_parser("coherence", parents=[parent], help="covariance matrix")
    sub.add_parser(
        "overlap", parents=[parent], help="overlap of two displaced Gaussians"
    )

    p = sub.add_parser("render", parents=[parent], help="write images and tables")
    p.add_argument("--out", help="intensity image, binary PGM")
    p.add_argument("--stokes", help="Stokes parameters, CSV")
    p.add_argument("--field", help="sampled field, CSV")

    p = sub.add_parser("tripartite", parents=[parent], help="three-party tensor")
    p.add_argument("--levels", type=int, nargs=2, default=[2, 2], metavar=("N", "M"))
    return parser


def make_config(args: argparse.Namespace) -> cf.BeamConfig:
    """
    Build a configuration from the given parsed arguments, starting from the
    file given by ``--config`` if any and overriding it with the flags.
    """
    family = args.beam
    if args.command == "overlap":
        family = "pp"
    if args.config:
        config = cf.read_config(args.config)
    elif family is None:
        raise hp.InvalidParameterError("Give a beam family with --beam or --config")
    else:
        config = cf.BeamConfig(family)

    return config.update(
        family=family,
        a=args.a,
        b=args.b,
        w0=args.w0,
        N=args.N,
        theta=args.theta,
        A=args.A,
        allow_overlap=args.allow_overlap,
        nx=args.nx,
        ny=args.ny,
        extent=args.extent,
        z=args.z,
    )


def _print_json(d: dict) -> None:
    print(json.dumps(d, indent=2))


def cmd_make(config: cf.BeamConfig, args) -> None:
    beam, grid = config.build()
    print(cs.FAMILY_FORMULAS[beam.family])
    print(vb.beam_terms_table(beam).to_string(index=False))
    if args.out:
        rd.dump_field_csv(vb.sample_beam(beam, grid), args.out)


def cmd_schmidt(config: cf.BeamConfig, args) -> None:
    if args.partition == "pol":
        print(rd.report_to_json(rd.build_report(config)), end="")
        return
    beam, grid = config.build()
    field = vb.sample_scalar_beam(beam, grid, angle=math.radians(args.angle))
    result = sa.schmidt_decompose_xy(field)
    _print_json(
        {
            "family": beam.family,
            "angle": args.angle,
            "weights": result.weights.tolist(),
            "K": result.K,
        }
    )


def cmd_coherence(config: cf.BeamConfig, args) -> None:
    beam, grid = config.build()
    density = ch.coherence_density(beam, grid)
    cov = ch.covariance_matrix(density)
    _print_json(
        {
            "family": beam.family,
            "covariance": cov.as_pairs(),
            "eigenvalues": cov.eigenvalues().tolist(),
            "dop": ch.degree_of_polarization(cov),
            "coherence_indicator": ch.coherence_indicator(density),
        }
    )


def cmd_overlap(config: cf.BeamConfig, args) -> None:
    beam, grid = config.build()
    p = config.resolved_params()
    analytic = sm.overlap_gaussian_analytic(float(p["a"]), float(p["w0"]))
    G = sa.spatial_gram(beam, grid, method="quadrature")
    print(f"analytic {analytic:.7f}")
    print(f"quadrature {G[0, 1].real:.7f}")
    print(f"difference {abs(G[0, 1] - analytic):.3e}")


def cmd_render(config: cf.BeamConfig, args) -> None:
    if not (args.out or args.stokes or args.field):
        raise hp.InvalidParameterError("Give at least one of --out, --stokes, --field")
    beam, grid = config.build()
    field = vb.sample_beam(beam, grid)
    if args.out:
        rd.render_intensity_pgm(field, args.out)
    if args.stokes:
        rd.render_stokes_csv(field, args.stokes)
    if args.field:
        rd.dump_field_csv(field, args.field)


def cmd_tripartite(config: cf.BeamConfig, args) -> None:
    config.check()
    t = vb.factorize_tripartite(config.beam(), tuple(args.levels))
    print(vb.tripartite_table(t, tol=1e-15).to_string(index=False))
    for party in cs.PARTIES:
        m = ch.reduced_party_matrix(t, party)
        eig = np.linalg.eigvalsh(m)[::-1]
        print(f"{party}: eigenvalues {np.array2string(eig, precision=12)}")


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line with the given arguments and return the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return cs.EXIT_INVALID if e.code else cs.EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )

    commands = {
        "make": cmd_make,
        "schmidt": cmd_schmidt,
        "coherence": cmd_coherence,
        "overlap": cmd_overlap,
        "render": cmd_render,
        "tripartite": cmd_tripartite,
    }
    try:
        config = make_config(args)
        commands[args.command](config, args)
    except ValueError as e:
        logger.error("%s", e)
        return cs.EXIT_INVALID
    except (ArithmeticError, OSError) as e:
        logger.error("%s", e)
        return cs.EXIT_NUMERICAL
    return cs.EXIT_OK


def main() -> None:
    sys.exit(run_cli())

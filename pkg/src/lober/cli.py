"""``lober`` command line.

    lober [-light] <c1> <c2> <rslt> [-DENS <nPass> [<nDens>]] [--oracle]
          [--plot-data DIR] [--seed N] [--jobs N]
    lober fixture <name> <outdir> [--n N]

Flags may appear anywhere. Exit codes: 0 success, 1 file or format error,
2 usage error, 3 transversality or topology error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .classes import lobe_areas, lobe_polygon, partition, successor_map, DIFFERENCE_VARIANT
from .densify import DensifyConfig, densify
from .exceptions import LoberError, TopologyError, TransversalityError
from .fixtures import FIXTURES, montecarlo_diff_area, named_fixture
from .io import OutputBatch, artifact_texts, format_result, format_tecplot, read_curve, write_curve
from .winding import boundary_pieces, set_difference_areas

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_TRANSVERSE = 0, 1, 2, 3
DEFAULT_DENS = (3, 10)

USAGE = "usage: lober [-light] <c1> <c2> <rslt> [-DENS <nPass> <nDens>] [--oracle] [--plot-data DIR] [--seed N] [--jobs N]"


class UsageError(Exception):
    pass


def _nonneg_int(tok: str) -> Optional[int]:
    try:
        v = int(tok)
    except ValueError:
        return None
    return v if v >= 0 else None


def _take_dens(argv: List[str]) -> Tuple[List[str], Optional[Tuple[int, int]]]:
    """Pull ``-DENS a b`` (or ``-DENS 0``) out of argv."""
    rest, dens = [], None
    i = 0
    while i < len(argv):
        if argv[i] != "-DENS":
            rest.append(argv[i])
            i += 1
            continue
        if dens is not None:
            raise UsageError("-DENS given twice")
        a = _nonneg_int(argv[i + 1]) if i + 1 < len(argv) else None
        if a is None:
            raise UsageError("-DENS needs non-negative integers <nPass> <nDens>")
        b = _nonneg_int(argv[i + 2]) if i + 2 < len(argv) else None
        if b is None:
            if a != 0:
                raise UsageError("-DENS needs two integers <nPass> <nDens> (only '-DENS 0' may stand alone)")
            dens, i = (0, 1), i + 2
        else:
            if b < 1:
                raise UsageError("<nDens> must be at least 1")
            dens, i = (a, b), i + 3
    return rest, dens


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lober", add_help=False)
    p.add_argument("paths", nargs="*")
    p.add_argument("-light", dest="light", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--plot-data", dest="plot_data")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("-h", "--help", action="store_true")
    return p


def parse_args(argv: List[str]):
    rest, dens = _take_dens(list(argv))
    args = _parser().parse_intermixed_args(rest)
    if args.help:
        return args
    if len(args.paths) != 3:
        raise UsageError(f"expected 3 positional arguments <c1> <c2> <rslt>, got {len(args.paths)}")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    args.dens = dens
    return args


def _fixture_cmd(argv: List[str]) -> int:
    p = _Parser(prog="lober fixture", add_help=False)
    p.add_argument("name")
    p.add_argument("outdir")
    p.add_argument("--n", type=int, default=4096)
    try:
        args = p.parse_args(argv)
        if args.name not in FIXTURES:
            raise UsageError(f"unknown fixture {args.name!r}; choose from {', '.join(FIXTURES)}")
    except UsageError as e:
        print(f"lober fixture: {e}\nusage: lober fixture <name> <outdir> [--n N]", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    c1, c2 = named_fixture(args.name, args.n)
    write_curve(out / "c1.dat", c1, f"{args.name} C1")
    write_curve(out / "c2.dat", c2, f"{args.name} C2")
    print(f"wrote {out / 'c1.dat'} and {out / 'c2.dat'}")
    return EXIT_OK


def run(argv: List[str]) -> int:
    if argv and argv[0] == "fixture":
        return _fixture_cmd(argv[1:])
    try:
        args = parse_args(argv)
    except UsageError as e:
        print(f"lober: {e}\n{USAGE}", file=sys.stderr)
        return EXIT_USAGE
    if args.help:
        print(__doc__)
        return EXIT_OK
    c1_path, c2_path, rslt_path = (Path(p) for p in args.paths)
    try:
        c1, c2 = read_curve(c1_path), read_curve(c2_path)
    except (OSError, LoberError, ValueError) as e:
        print(f"lober: cannot read input: {e}", file=sys.stderr)
        return EXIT_IO

    # the default densifier profile only applies to the transverse method
    dens = args.dens if args.dens is not None else (None if args.light else DEFAULT_DENS)
    try:
        if dens is not None and dens[0] > 0:
            c1, c2 = densify(c1, c2, DensifyConfig(*dens), n_jobs=args.jobs)
        if args.light:
            report = set_difference_areas(c1, c2, n_jobs=args.jobs)
            rel = None
        else:
            report = lobe_areas(c1, c2, cross_check=True, n_jobs=args.jobs)
            print(f"lober: class vs winding discrepancy {report.discrepancy:.3e}", file=sys.stderr)
            rel = None if args.oracle else (0.0, 0.0)
        pieces = boundary_pieces(c1, c2, n_jobs=args.jobs)
    except TransversalityError as e:
        print(f"lober: {e}\nlober: the curves do not cross transversely; rerun with -light", file=sys.stderr)
        return EXIT_TRANSVERSE
    except TopologyError as e:
        print(f"lober: {e}\nlober: try densifying (-DENS) or the -light method", file=sys.stderr)
        return EXIT_TRANSVERSE
    except LoberError as e:
        print(f"lober: {e}", file=sys.stderr)
        return EXIT_IO

    for line in report.diagnostics:
        print(f"lober: note: {line}", file=sys.stderr)
    if args.oracle:
        est = montecarlo_diff_area(c1, c2, args.samples, args.seed)
        print(
            f"lober: Monte-Carlo A1\\A2 = {est.value:.6g} +/- {est.std_error:.2g} "
            f"({est.samples} samples, seed {est.seed}); method gives {report.a1_minus_a2:.6g}",
            file=sys.stderr,
        )

    out_dir = rslt_path.parent
    try:
        with OutputBatch() as batch:
            batch.add(rslt_path, format_result(report, rel))
            for key, text in artifact_texts(report.intersections, pieces).items():
                batch.add(out_dir / f"{key}.dat", text)
            if args.plot_data:
                _plot_data(batch, Path(args.plot_data), report, c1, c2)
    except OSError as e:
        print(f"lober: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _plot_data(batch: OutputBatch, directory: Path, report, c1, c2) -> None:
    """One Tecplot file per lobe (class method) or per boundary piece set (winding method)."""
    from .geometry import Orientation

    directory.mkdir(parents=True, exist_ok=True)
    pts = report.intersections
    if report.method != "transverse" or pts is None or pts.count == 0:
        return
    c1n, c2n = c1.oriented(Orientation.CCW), c2.oriented(Orientation.CW)
    for key, variant in DIFFERENCE_VARIANT.items():
        sigma = successor_map(pts, variant)
        for k, cls in enumerate(partition(pts, variant, sigma)):
            poly = lobe_polygon(cls, sigma, pts, c1n, c2n)
            batch.add(directory / f"lobe_{key}_{k:03d}.dat", format_tecplot(poly, f"{key} lobe {k}"))


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

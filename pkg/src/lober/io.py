"""Tecplot ASCII curve files and the result/artifact outputs.

Files hold one header line naming the two variables, a ``ZONE`` line and
one ``x y`` row per vertex. Numbers are written as the shortest decimal
that round-trips, so ``read_curve(write_curve(c))`` is value exact.
"""
from __future__ import annotations

import os
import re
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Optional

import numpy as np

from .exceptions import TecplotFormatError
from .geometry import ClosedCurve, as_curve

HEADER = 'VARIABLES = "x" "y"'
ARTIFACTS = ("c10", "c20", "c11", "c22", "c12", "c21")

_VAR_RE = re.compile(r"^\s*VARIABLES\s*=?\s*(.*)$", re.IGNORECASE)
_ZONE_RE = re.compile(r"^\s*ZONE\b(.*)$", re.IGNORECASE)
_TITLE_RE = re.compile(r'T\s*=\s*"([^"]*)"', re.IGNORECASE)


@dataclass(frozen=True)
class CurveFile:
    variables: tuple
    zone_title: str
    rows: np.ndarray


def _variable_names(spec: str, lineno: int) -> tuple:
    # standard "x" "y", run-together "x""y", or doubled single quotes ''x''''y''
    s = spec.replace("''", '"')
    names = re.findall(r'"([^"]*)"', s)
    if not names:
        names = [tok for tok in re.split(r"[\s,]+", s.strip()) if tok]
    if len(names) != 2:
        raise TecplotFormatError(f"expected exactly two variables, found {len(names)}: {spec.strip()!r}", lineno)
    return tuple(names)


def parse_tecplot(text: str, source: str = "<string>") -> CurveFile:
    variables = None
    title = ""
    rows = []
    zones = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _VAR_RE.match(line)
        if m:
            if variables is not None or rows:
                raise TecplotFormatError("VARIABLES line must come first and only once", lineno)
            variables = _variable_names(m.group(1), lineno)
            continue
        if variables is None:
            if line.upper().startswith("TITLE"):
                continue
            raise TecplotFormatError(f"missing VARIABLES header, got {line[:40]!r}", lineno)
        m = _ZONE_RE.match(line)
        if m:
            zones += 1
            if zones > 1:
                warnings.warn(f"{source}: only the first ZONE is read (extra zone at line {lineno})", stacklevel=3)
                break
            t = _TITLE_RE.search(m.group(1).replace("''", '"'))
            title = t.group(1) if t else ""
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise TecplotFormatError(f"expected 2 numbers per row, got {len(parts)}", lineno)
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise TecplotFormatError(f"non-numeric row {line[:60]!r}", lineno) from None
        if not (np.isfinite(x) and np.isfinite(y)):
            raise TecplotFormatError("non-finite coordinate", lineno)
        rows.append((x, y))
    if variables is None:
        raise TecplotFormatError("empty file: no VARIABLES header", 1)
    return CurveFile(variables, title, np.array(rows, dtype=float).reshape(-1, 2))


def read_curve(path) -> ClosedCurve:
    """Vertices of the first zone in file order; a closing repeat of the first point is dropped."""
    text = Path(path).read_text()
    return ClosedCurve(parse_tecplot(text, str(path)).rows)


def format_tecplot(points, zone_title: str = "") -> str:
    xy = np.asarray(points.vertices if isinstance(points, ClosedCurve) else points, dtype=float).reshape(-1, 2)
    lines = [HEADER, f'ZONE T="{zone_title}"']
    lines.extend(f"{repr(float(x))} {repr(float(y))}" for x, y in xy)
    return "\n".join(lines) + "\n"


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_curve(path, curve, zone_title: str = "") -> None:
    _atomic_write(path, format_tecplot(as_curve(curve), zone_title))


def write_points(path, points, zone_title: str = "") -> None:
    """Like :func:`write_curve` for arbitrary (possibly empty) point arrays."""
    _atomic_write(path, format_tecplot(points, zone_title))


def format_result(report, relative_errors: Optional[Iterable[float]] = None) -> str:
    """``A1\\A2 A2\\A1 err1 err2`` on one line; errors default to the report's own."""
    e1, e2 = report.relative_errors if relative_errors is None else relative_errors
    vals = (report.a1_minus_a2, report.a2_minus_a1, e1, e2)
    return " ".join(repr(float(v)) for v in vals) + "\n"


def write_result(path, report, relative_errors: Optional[Iterable[float]] = None) -> None:
    _atomic_write(path, format_result(report, relative_errors))


class OutputBatch:
    """Collects several files and publishes them together, or none on error."""

    def __init__(self):
        self._staged = []

    def add(self, path, text: str) -> None:
        path = Path(path)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        self._staged.append((tmp, path))

    def commit(self) -> None:
        for tmp, path in self._staged:
            os.replace(tmp, path)
        self._staged = []

    def discard(self) -> None:
        for tmp, _ in self._staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        self._staged = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.commit()
        else:
            self.discard()
        return False


def artifact_texts(intersections, pieces: Dict[str, np.ndarray]) -> Dict[str, str]:
    """The six artifact files: crossings ordered along C1 (c10) and C2 (c20), then the boundary pieces."""
    out = {}
    if intersections is None or intersections.count == 0:
        xy1 = xy2 = np.zeros((0, 2))
    else:
        xy1 = intersections.xy[intersections.by_order_c1()]
        xy2 = intersections.xy[intersections.by_order_c2()]
    out["c10"] = format_tecplot(xy1, "intersections along C1")
    out["c20"] = format_tecplot(xy2, "intersections along C2")
    titles = {
        "c11": "C1 inside C2",
        "c22": "C2 inside C1",
        "c12": "C1 outside C2",
        "c21": "C2 outside C1",
    }
    for key, title in titles.items():
        out[key] = format_tecplot(pieces.get(key, np.zeros((0, 2))), title)
    return out


def write_artifacts(directory, intersections, pieces: Dict[str, np.ndarray], batch: Optional[OutputBatch] = None) -> None:
    """Write ``c10.dat`` ... ``c21.dat`` into ``directory``."""
    directory = Path(directory)
    own = batch is None
    batch = OutputBatch() if own else batch
    for key, text in artifact_texts(intersections, pieces).items():
        batch.add(directory / f"{key}.dat", text)
    if own:
        batch.commit()

"""Locating and loading the bundled quandles, cochains and diagrams.

``QUANDLEKIT_DATA`` overrides the bundled directory.  A relative path that
does not exist in the working directory is looked up there.
"""

from __future__ import annotations

import os
from pathlib import Path

from .diagrams import LinkDiagram, parse_diagram
from .formats import MalformedInputError, parse_cochain, parse_quandle
from .homology import Cochain2
from .quandle import FiniteQuandle

BUNDLED = Path(__file__).resolve().parent / "data"


def data_dir() -> Path:
    override = os.environ.get("QUANDLEKIT_DATA")
    return Path(override) if override else BUNDLED


def resolve(path: str | os.PathLike) -> Path:
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    candidate = data_dir() / p
    return candidate if candidate.exists() else p


def load_quandle(path) -> FiniteQuandle:
    p = resolve(path)
    return parse_quandle(p.read_text(), str(path))


def load_cochain(path, X: FiniteQuandle) -> Cochain2:
    p = resolve(path)
    return parse_cochain(p.read_text(), X, str(path)).cochain


def load_diagram(path) -> LinkDiagram:
    p = resolve(path)
    return parse_diagram(p.read_text())


def bundled(suffix: str) -> list[Path]:
    """Bundled files with the given suffix, sorted by name."""
    return sorted(data_dir().glob(f"*{suffix}"))


def cochain_header(path) -> tuple[str, str]:
    """(quandle name, group spec) from a cochain file's header line."""
    for lineno, raw in enumerate(resolve(path).read_text().splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            if len(fields) != 3 or fields[0] != "cocycle":
                raise MalformedInputError("expected header 'cocycle <quandle-name> <group>'", lineno, str(path))
            return fields[1], fields[2]
    raise MalformedInputError("empty cochain file", None, str(path))


def bundled_cocycles() -> list[tuple[str, FiniteQuandle, Cochain2]]:
    """Every bundled cochain file with the quandle its header names (``<name>.qnd``, lower-cased)."""
    out = []
    for path in bundled(".coc"):
        qname, _ = cochain_header(path)
        X = load_quandle(data_dir() / f"{qname.lower()}.qnd")
        out.append((path.stem, X, load_cochain(path, X)))
    return out

"""Loading of the transcribed reference data (signatures and trail lists)."""

from __future__ import annotations

import json
import os
from pathlib import Path

ENV_VAR = "KRCRYSTAL_FIXTURES"

TRAIL_FILES = {
    "E6r6": ("trails_E6r6.txt",),
    "E7r7": ("trails_E7r7_sub1.txt", "trails_E7r7_sub2.txt"),
}


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    path = Path(override) if override else Path(__file__).with_name("fixtures")
    if not path.is_dir():
        raise FileNotFoundError(f"fixture directory {path} does not exist")
    return path


def load_signatures(path: Path | None = None) -> dict:
    path = path or fixture_dir() / "signatures.json"
    return json.loads(Path(path).read_text())


def parse_trail_lines(lines) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Return (letters, trails) from a trail fixture body."""
    word: tuple[int, ...] = ()
    trails = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("word:"):
            word = tuple(int(x) for x in line[5:].split())
            continue
        if set(line) - {"0", "1"} or (word and len(line) != len(word)):
            raise ValueError(f"malformed trail line {line!r}")
        trails.append(tuple(int(ch) for ch in line))
    return word, trails


def load_trails(key: str, directory: Path | None = None) -> dict[str, tuple[tuple[int, ...], list]]:
    """Fixture trails for a model key, grouped by file stem."""
    directory = directory or fixture_dir()
    if key == "E6r1":
        # r = 1 is the diagram-flip image of r = 6; only the letters change
        from .words import E6_FLIP

        return {
            stem: (tuple(E6_FLIP[a] for a in word), rows)
            for stem, (word, rows) in load_trails("E6r6", directory).items()
        }
    if key not in TRAIL_FILES:
        raise ValueError(f"no trail fixtures for {key}")
    out = {}
    for name in TRAIL_FILES[key]:
        out[Path(name).stem] = parse_trail_lines((directory / name).read_text().splitlines())
    return out

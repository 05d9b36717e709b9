"""Reading scenario files and writing reproducible numbers."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .model import EffectivenessSpec, ModelError, ScenarioConfig

REQUIRED_KEYS = ("v1", "v2", "gamma", "d1", "d2", "f.family")
KNOWN_KEYS = REQUIRED_KEYS + ("f.a", "f.b", "f.c")


class ScenarioParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def parse_scenario_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` (or ``key: value``) lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, value = (s.strip() for s in line.split(sep, 1))
                break
        else:
            raise ScenarioParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key not in KNOWN_KEYS:
            raise ScenarioParseError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ScenarioParseError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ScenarioParseError(f"empty value for {key!r}", lineno)
        values[key] = value
    return values


def scenario_from_mapping(values: dict[str, str]) -> ScenarioConfig:
    missing = [k for k in REQUIRED_KEYS if k not in values]
    family = values.get("f.family")
    if family == "satexp":
        missing += [k for k in ("f.a", "f.b", "f.c") if k not in values]
    if missing:
        raise ScenarioParseError(f"missing keys: {', '.join(missing)}")

    def num(key):
        try:
            x = float(values[key])
        except ValueError:
            raise ScenarioParseError(f"{key} is not a number: {values[key]!r}") from None
        if not math.isfinite(x):
            raise ScenarioParseError(f"{key} must be finite")
        return x

    if family not in ("sqrt", "log1p", "satexp"):
        raise ScenarioParseError(f"unknown f.family {family!r} (sqrt, log1p, satexp)")
    if family == "satexp":
        params = (num("f.a"), num("f.b"), num("f.c"))
    else:
        params = ()
    try:
        eff = EffectivenessSpec(family, *params)
    except ModelError as exc:
        raise ScenarioParseError(str(exc)) from None
    try:
        return ScenarioConfig.build(num("v1"), num("v2"), num("gamma"), num("d1"), num("d2"), eff)
    except ModelError as exc:
        raise ScenarioParseError(f"invalid scenario: {exc}") from None


def load_scenario(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc.strerror}") from None
    return scenario_from_mapping(parse_scenario_text(text))


def dump_scenario(scenario: ScenarioConfig) -> str:
    eff = scenario.effectiveness
    lines = [
        f"v1 = {scenario.v1!r}",
        f"v2 = {scenario.v2!r}",
        f"gamma = {scenario.gamma!r}",
        f"d1 = {scenario.d1!r}",
        f"d2 = {scenario.d2!r}",
        f"f.family = {eff.family}",
    ]
    if eff.family == "satexp":
        lines += [f"f.a = {eff.a!r}", f"f.b = {eff.b!r}", f"f.c = {eff.c!r}"]
    return "\n".join(lines) + "\n"


def fmt(x) -> str:
    """Twelve significant digits in scientific notation; other types via ``str``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.11e}"
    return str(x)


def rows_to_csv(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(row.get(col)) for col in header])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


__all__ = [
    "ModelError",
    "ScenarioParseError",
    "dump_scenario",
    "fmt",
    "load_scenario",
    "parse_scenario_text",
    "read_csv",
    "rows_to_csv",
    "scenario_from_mapping",
]

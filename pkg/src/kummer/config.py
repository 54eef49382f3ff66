"""Plain-text configuration files describing (n, generators).

Format::

    # comment
    dimension = 7

    [generator]
    signs = "----+++"
    translation = ["0","0","0","0","0","0","0"]

    [options]
    format = "text"
    verbosity = 1

Values are JSON literals.  Translations are exact rationals written "p/q"
and are reduced modulo 1 on reading.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .group import AffineInvolutionMap, GroupZ2k, make_group, mod1

RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
SIGN_CHARS = {"+": 1, "-": -1, "−": -1}
FORMATS = ("text", "json")


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.message = message
        self.line = line
        self.field = field

    def as_dict(self) -> dict:
        return {"type": "ConfigError", "message": self.message, "line": self.line, "field": self.field}


def parse_rational(text: str) -> Fraction:
    m = RATIONAL.match(text) if isinstance(text, str) else None
    if not m:
        raise ValueError(f"malformed rational {text!r}, expected 'p/q'")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GeneratorSpec:
    signs: str
    translation: tuple[Fraction, ...]

    def to_map(self) -> AffineInvolutionMap:
        return AffineInvolutionMap([SIGN_CHARS[c] for c in self.signs], self.translation)


@dataclass(frozen=True)
class Config:
    dimension: int
    generators: tuple[GeneratorSpec, ...]
    options: dict = field(default_factory=dict, compare=True, hash=False)

    def to_group(self) -> GroupZ2k:
        return make_group([g.to_map() for g in self.generators])

    @property
    def format(self) -> str:
        return self.options.get("format", "text")

    @property
    def verbosity(self) -> int:
        return self.options.get("verbosity", 1)


def parse_config(text: str) -> Config:
    dimension: Optional[int] = None
    dimension_line = None
    blocks: list[dict] = []
    options: dict = {}
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if line == "[generator]":
                section = "generator"
                blocks.append({"_line": lineno})
            elif line == "[options]":
                section = "options"
            else:
                raise ConfigError(f"unknown section {line}", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        try:
            value = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"value is not a literal: {exc.msg}", lineno, key) from None

        if section is None:
            if key != "dimension":
                raise ConfigError("only 'dimension' may appear before the first section", lineno, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError("dimension must be a positive integer", lineno, key)
            dimension, dimension_line = value, lineno
        elif section == "generator":
            if key not in ("signs", "translation"):
                raise ConfigError("generator keys are 'signs' and 'translation'", lineno, key)
            if key in blocks[-1]:
                raise ConfigError("duplicate key", lineno, key)
            blocks[-1][key] = (value, lineno)
        else:
            if key == "format" and value not in FORMATS:
                raise ConfigError(f"format must be one of {FORMATS}", lineno, key)
            if key == "verbosity" and (not isinstance(value, int) or isinstance(value, bool)):
                raise ConfigError("verbosity must be an integer", lineno, key)
            if key not in ("format", "verbosity"):
                raise ConfigError("unknown option", lineno, key)
            options[key] = value

    if dimension is None:
        raise ConfigError("missing 'dimension'", None, "dimension")
    if not blocks:
        raise ConfigError("no [generator] blocks", dimension_line)

    generators = []
    for block in blocks:
        start = block["_line"]
        if "signs" not in block:
            raise ConfigError("generator without 'signs'", start, "signs")
        signs, line = block["signs"]
        if not isinstance(signs, str) or any(c not in SIGN_CHARS for c in signs):
            raise ConfigError("signs must be a string of '+' and '-'", line, "signs")
        if len(signs) != dimension:
            raise ConfigError(
                f"signs has length {len(signs)} but dimension is {dimension}", line, "signs"
            )
        signs = "".join("+" if SIGN_CHARS[c] == 1 else "-" for c in signs)
        translation, line = block.get("translation", (["0"] * dimension, start))
        if not isinstance(translation, list):
            raise ConfigError("translation must be a list of 'p/q' strings", line, "translation")
        if len(translation) != dimension:
            raise ConfigError(
                f"translation has {len(translation)} entries but dimension is {dimension}",
                line,
                "translation",
            )
        try:
            values = tuple(mod1(parse_rational(t)) for t in translation)
        except ValueError as exc:
            raise ConfigError(str(exc), line, "translation") from None
        generators.append(GeneratorSpec(signs, values))
    return Config(dimension, tuple(generators), options)


def serialize_config(config: Config) -> str:
    lines = [f"dimension = {config.dimension}"]
    for g in config.generators:
        lines += [
            "",
            "[generator]",
            f"signs = {json.dumps(g.signs)}",
            "translation = " + json.dumps([format_rational(t) for t in g.translation]),
        ]
    if config.options:
        lines += ["", "[options]"]
        lines += [f"{k} = {json.dumps(v)}" for k, v in config.options.items()]
    return "\n".join(lines) + "\n"


def config_from_group(group: GroupZ2k, **options) -> Config:
    gens = tuple(
        GeneratorSpec("".join("+" if s == 1 else "-" for s in g.signs), g.translation)
        for g in group.generators
    )
    return Config(group.n, gens, dict(options))


def example_config_text() -> str:
    return resources.files("kummer.data").joinpath("example3.cfg").read_text(encoding="utf-8")


def load_config(path: Optional[str] = None) -> Config:
    if path is None:
        return parse_config(example_config_text())
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())

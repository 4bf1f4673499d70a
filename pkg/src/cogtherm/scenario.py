"""Scenario files: a small INI-like grammar.

::

    # comment
    [dynamics]
    length = 2
    dt = 0.001
    t_end = 0.6931
    gamma = 0
    subsumer = 01 1.0
    input = 10 1.0            # optional window: input = 10 1.0 0.0 0.5

    [szilard]
    temperature = 300
    epsilon = 0.1
    cycles = 100000
    seed = 42

``subsumer`` and ``input`` may repeat and accumulate in order. An optional
``output = <dir>`` may appear before the first section.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cognition import DEFAULT_TEMPERATURE
from .dynamics import DEFAULT_DT, CognitiveStructure, InputChannel, Subsumer
from .errors import ScenarioError
from .matching import Shape


@dataclass
class DynamicsSection:
    length: int | None = None
    dt: float = DEFAULT_DT
    t_end: float | None = None
    gamma: float = 0.0
    subsumers: list[Subsumer] = field(default_factory=list)
    inputs: list[InputChannel] = field(default_factory=list)

    def structure(self) -> CognitiveStructure:
        return CognitiveStructure(tuple(self.subsumers), self.gamma)


@dataclass
class SzilardSection:
    temperature: float = DEFAULT_TEMPERATURE
    epsilon: float = 0.0
    cycles: int = 100_000
    seed: int = 0


@dataclass
class Scenario:
    dynamics: DynamicsSection | None = None
    szilard: SzilardSection | None = None
    output_dir: str | None = None

    @property
    def temperature(self) -> float:
        return self.szilard.temperature if self.szilard else DEFAULT_TEMPERATURE


_DYNAMICS_KEYS = {"length", "dt", "t_end", "gamma", "subsumer", "input"}
_SZILARD_KEYS = {"temperature", "epsilon", "cycles", "seed"}
_TOP_KEYS = {"output"}


def _number(text, lineno, col, name):
    try:
        v = float(text)
    except ValueError:
        raise ScenarioError(f"{name}: expected a number, got {text!r}", lineno, col) from None
    if not math.isfinite(v):
        raise ScenarioError(f"{name}: value must be finite, got {text!r}", lineno, col)
    return v


def _integer(text, lineno, col, name):
    try:
        return int(text)
    except ValueError:
        raise ScenarioError(f"{name}: expected an integer, got {text!r}", lineno, col) from None


class _Parser:
    def __init__(self):
        self.scenario = Scenario()
        self.section = None
        self.section_line = {}

    def shape(self, text, lineno, col, sec: DynamicsSection):
        try:
            shape = Shape.parse(text)
        except ValueError as exc:
            raise ScenarioError(str(exc), lineno, col) from None
        if sec.length is None:
            sec.length = len(shape)
        elif len(shape) != sec.length:
            raise ScenarioError(
                f"shape length mismatch: {text!r} has length {len(shape)}, expected {sec.length}",
                lineno,
                col,
            )
        return shape

    def header(self, stripped, lineno):
        name = stripped[1:-1].strip()
        if name == "dynamics":
            if self.scenario.dynamics is not None:
                raise ScenarioError("duplicate [dynamics] section", lineno, 1)
            self.scenario.dynamics = DynamicsSection()
        elif name == "szilard":
            if self.scenario.szilard is not None:
                raise ScenarioError("duplicate [szilard] section", lineno, 1)
            self.scenario.szilard = SzilardSection()
        else:
            raise ScenarioError(f"unknown section [{name}]", lineno, 1)
        self.section = name
        self.section_line[name] = lineno

    def entry(self, key, value, lineno, vcol):
        if self.section is None:
            if key not in _TOP_KEYS:
                raise ScenarioError(f"unknown key {key!r} outside any section", lineno, 1)
            self.scenario.output_dir = value
        elif self.section == "dynamics":
            if key not in _DYNAMICS_KEYS:
                raise ScenarioError(f"unknown key {key!r} in [dynamics]", lineno, 1)
            self.dynamics_entry(key, value, lineno, vcol)
        else:
            if key not in _SZILARD_KEYS:
                raise ScenarioError(f"unknown key {key!r} in [szilard]", lineno, 1)
            self.szilard_entry(key, value, lineno, vcol)

    def dynamics_entry(self, key, value, lineno, vcol):
        sec = self.scenario.dynamics
        if key == "length":
            n = _integer(value, lineno, vcol, key)
            if n < 1:
                raise ScenarioError("length must be >= 1", lineno, vcol)
            if sec.subsumers or sec.inputs:
                if n != sec.length:
                    raise ScenarioError(
                        f"length {n} disagrees with earlier shapes of length {sec.length}",
                        lineno,
                        vcol,
                    )
            sec.length = n
        elif key in ("dt", "t_end", "gamma"):
            v = _number(value, lineno, vcol, key)
            if key == "dt" and not v > 0:
                raise ScenarioError("dt must be > 0", lineno, vcol)
            if key == "t_end" and not v > 0:
                raise ScenarioError("t_end must be > 0", lineno, vcol)
            if key == "gamma" and v < 0:
                raise ScenarioError("gamma must be >= 0", lineno, vcol)
            setattr(sec, key, v)
        else:
            parts = value.split()
            expected = "<shape> <strength>" if key == "subsumer" else "<shape> <rate> [<start> <end>]"
            if key == "subsumer" and len(parts) != 2 or key == "input" and len(parts) not in (2, 4):
                raise ScenarioError(f"{key}: expected {expected}", lineno, vcol)
            shape = self.shape(parts[0], lineno, vcol, sec)
            amount = _number(parts[1], lineno, vcol, key)
            if amount < 0:
                raise ScenarioError(f"{key}: value must be >= 0", lineno, vcol)
            if key == "subsumer":
                sec.subsumers.append(Subsumer(shape, amount))
            else:
                window = None
                if len(parts) == 4:
                    window = (_number(parts[2], lineno, vcol, key), _number(parts[3], lineno, vcol, key))
                    if not window[0] < window[1]:
                        raise ScenarioError("input window must satisfy start < end", lineno, vcol)
                sec.inputs.append(InputChannel(shape, amount, window))

    def szilard_entry(self, key, value, lineno, vcol):
        sec = self.scenario.szilard
        if key == "temperature":
            v = _number(value, lineno, vcol, key)
            if not v > 0:
                raise ScenarioError("temperature must be > 0 K", lineno, vcol)
        elif key == "epsilon":
            v = _number(value, lineno, vcol, key)
            if not 0 <= v < 0.5:
                raise ScenarioError("epsilon must lie in [0, 0.5)", lineno, vcol)
        elif key == "cycles":
            v = _integer(value, lineno, vcol, key)
            if v < 1:
                raise ScenarioError("cycles must be >= 1", lineno, vcol)
        else:
            v = _integer(value, lineno, vcol, key)
            if not 0 <= v < 2**64:
                raise ScenarioError("seed must be an unsigned 64-bit integer", lineno, vcol)
        setattr(sec, key, v)

    def finish(self, last_line):
        sc = self.scenario
        if sc.dynamics is None and sc.szilard is None:
            raise ScenarioError("scenario has no [dynamics] or [szilard] section", last_line)
        dyn = sc.dynamics
        if dyn is not None:
            line = self.section_line["dynamics"]
            if not dyn.subsumers:
                raise ScenarioError("[dynamics] needs at least one subsumer", line)
            if dyn.t_end is None:
                raise ScenarioError("[dynamics] needs t_end", line)
            if dyn.t_end < dyn.dt:
                raise ScenarioError("[dynamics] t_end must be >= dt", line)
        return sc


def parse_scenario(text: str) -> Scenario:
    p = _Parser()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ScenarioError("unterminated section header", lineno, len(line) - len(line.lstrip()) + 1)
            p.header(stripped, lineno)
            continue
        if "=" not in line:
            raise ScenarioError("expected 'key = value'", lineno, len(line) - len(line.lstrip()) + 1)
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ScenarioError("missing key before '='", lineno, line.index("=") + 1)
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if not value:
            raise ScenarioError(f"missing value for {key!r}", lineno, line.index("=") + 1)
        p.entry(key, value, lineno, vcol)
    return p.finish(max(lineno, 1))


def load_scenario(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ScenarioError(f"scenario is not valid UTF-8 ({exc.reason})") from None
    return parse_scenario(text)


def format_scenario(sc: Scenario) -> str:
    """Render a scenario so that ``parse_scenario`` restores it exactly."""
    out = []
    if sc.output_dir is not None:
        out.append(f"output = {sc.output_dir}")
    if sc.dynamics is not None:
        d = sc.dynamics
        out.append("[dynamics]")
        if d.length is not None:
            out.append(f"length = {d.length}")
        out.append(f"dt = {d.dt!r}")
        if d.t_end is not None:
            out.append(f"t_end = {d.t_end!r}")
        out.append(f"gamma = {d.gamma!r}")
        for s in d.subsumers:
            out.append(f"subsumer = {s.shape} {s.strength!r}")
        for i in d.inputs:
            line = f"input = {i.shape} {i.rate!r}"
            if i.window is not None:
                line += f" {i.window[0]!r} {i.window[1]!r}"
            out.append(line)
    if sc.szilard is not None:
        z = sc.szilard
        out.append("[szilard]")
        out.append(f"temperature = {z.temperature!r}")
        out.append(f"epsilon = {z.epsilon!r}")
        out.append(f"cycles = {z.cycles}")
        out.append(f"seed = {z.seed}")
    return "\n".join(out) + "\n"

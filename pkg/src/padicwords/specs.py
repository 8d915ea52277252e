"""Sequence spec files (JSON) and the bundled named specs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import SpecError
from .generators import (Automaton, MorphicSystem, Morphism, SturmianParams, automaton_stream,
                         indicator_stream, morphic_stream, sturmian_stream)
from .quadratic import CFPrefix, QuadraticNumber, Slope, quadratic_from_list
from .words import InfiniteWordStream

KINDS = ("automaton", "morphic", "sturmian", "indicator")


@dataclass(frozen=True)
class SequenceSpec:
    """A parsed spec: its id, kind and the constructed generator object."""

    id: str
    kind: str
    obj: Any
    raw: dict = field(repr=False, compare=False, default_factory=dict)

    def stream(self) -> InfiniteWordStream:
        if self.kind == "automaton":
            return automaton_stream(self.obj, self.id)
        if self.kind == "morphic":
            return morphic_stream(self.obj, self.id)
        if self.kind == "sturmian":
            return sturmian_stream(self.obj, self.id)
        theta, rho = self.obj
        return indicator_stream(theta, rho, name=self.id)[0]


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise SpecError(f"{where}: expected an object")
    if key not in d:
        raise SpecError(f"{where}: missing field '{key}'")
    return d[key]


def _int_list(v, where: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SpecError(f"{where}: expected a list of integers")
    return v


def parse_rational(text, where: str = "rho") -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise SpecError(f"{where}: expected a string 'num/den'")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{where}: cannot read {text!r} as a rational 'num/den'") from None


def parse_slope(v, where: str = "theta") -> Slope:
    if not isinstance(v, dict) or len(v) != 1:
        raise SpecError(f"{where}: expected {{\"quadratic\": [a,b,c,d]}} or {{\"cf_prefix\": [...]}}")
    (key, val), = v.items()
    try:
        if key == "quadratic":
            coeffs = _int_list(val, f"{where}.quadratic")
            if len(coeffs) != 4:
                raise SpecError(f"{where}.quadratic: need exactly [a, b, c, d]")
            q = quadratic_from_list(coeffs)
            if q.is_rational:
                raise SpecError(f"{where}.quadratic: value is rational")
            return q
        if key == "cf_prefix":
            return CFPrefix(tuple(_int_list(val, f"{where}.cf_prefix")))
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"{where}.{key}: {exc}") from None
    raise SpecError(f"{where}: unknown slope form '{key}'")


def _images(v, where: str) -> list[list[int]]:
    if not isinstance(v, list) or not v:
        raise SpecError(f"{where}: expected a nonempty list")
    out = []
    for i, img in enumerate(v):
        if isinstance(img, str):
            try:
                out.append([int(c, 36) for c in img])
            except ValueError:
                raise SpecError(f"{where}[{i}]: letters must be digits") from None
        else:
            out.append(_int_list(img, f"{where}[{i}]"))
    return out


def spec_from_dict(d: dict, default_id: str = "spec") -> SequenceSpec:
    kind = _need(d, "kind", "spec")
    if kind not in KINDS:
        raise SpecError(f"kind: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    sid = d.get("id", default_id)
    try:
        if kind == "automaton":
            k = _need(d, "k", "automaton")
            states = _need(d, "states", "automaton")
            rows = _need(d, "transitions", "automaton")
            if not isinstance(rows, list) or len(rows) != states:
                raise SpecError(f"transitions: expected {states} rows")
            rows = [_int_list(r, f"transitions[{i}]") for i, r in enumerate(rows)]
            out = _int_list(_need(d, "output", "automaton"), "output")
            obj = Automaton(k, tuple(map(tuple, rows)), _need(d, "initial", "automaton"), tuple(out))
        elif kind == "morphic":
            images = _images(_need(d, "images", "morphic"), "images")
            coding = _int_list(d.get("coding", list(range(len(images)))), "coding")
            obj = MorphicSystem(Morphism(tuple(map(tuple, images))), tuple(coding), d.get("seed", 0))
            obj.check_prolongable()
        elif kind == "sturmian":
            theta = parse_slope(_need(d, "theta", "sturmian"))
            rho = parse_rational(d.get("rho", "0/1"))
            coding = tuple(_int_list(d.get("coding", [0, 1]), "coding"))
            obj = SturmianParams(theta, rho, d.get("variant", "floor"), coding)
        else:
            theta = parse_slope(_need(d, "theta", "indicator"))
            rho = parse_rational(d.get("rho", "0/1"))
            indicator_stream(theta, rho)  # validates the slope
            obj = (theta, rho)
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"{kind}: {exc}") from None
    return SequenceSpec(sid, kind, obj, d)


def parse_spec(text: str, default_id: str = "spec") -> SequenceSpec:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(d, default_id)


def builtin_names() -> list[str]:
    root = resources.files("padicwords") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_spec(name_or_path: str) -> SequenceSpec:
    """Load a bundled spec by name, or a spec file by path."""
    path = Path(name_or_path)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise SpecError(f"{name_or_path}: {exc.strerror}") from None
        return parse_spec(text, path.stem)
    res = resources.files("padicwords") / "data" / f"{name_or_path}.json"
    if not res.is_file():
        raise SpecError(f"unknown spec {name_or_path!r}; bundled specs: {', '.join(builtin_names())}")
    return parse_spec(res.read_text(), name_or_path)

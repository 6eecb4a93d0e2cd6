"""Curve-spec JSON: parsing with line/column errors and the inverse serialiser.

Format::

    {"kind": "support", "period": "4pi", "constant": 14,
     "terms": [{"freq": "3/2", "cos": 3}, {"freq": "5/2", "sin": 0.2}]}

    {"kind": "fourier", "period": "2pi",
     "x": {"terms": [{"freq": 1, "cos": 1}]},
     "y": {"constant": 0, "terms": [{"freq": 1, "sin": 1}]}}

Frequencies are exact rationals written as integers or "p/q" strings.
Periods are numbers or multiples of pi such as "2pi", "4*pi", "pi".
"""

import json
import re
from fractions import Fraction
from math import pi
from pathlib import Path

from .curve import FOURIER, SUPPORT, CurveSpec, TrigTerm, build_curve
from .errors import ParseError

_PERIOD = re.compile(r"^\s*(\d+(?:/\d+)?)?\s*\*?\s*pi\s*$")
KINDS = {"support": SUPPORT, "support_rosette": SUPPORT, "fourier": FOURIER, "fourier_parametric": FOURIER}


def _locate(text, needle):
    """(line, column) of the first occurrence of needle, 1-based; (None, None) if absent."""
    i = text.find(needle) if text else -1
    if i < 0:
        return None, None
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


def _fail(text, message, needle=None):
    line, col = _locate(text, needle) if needle else (None, None)
    raise ParseError(message, line, col)


def parse_period(value, text=""):
    if isinstance(value, bool):
        _fail(text, "period must be a number or a multiple of pi", '"period"')
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PERIOD.match(value)
        if m:
            k = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            return float(k) * pi
        try:
            return float(value)
        except ValueError:
            pass
    _fail(text, f"cannot read period {value!r}", '"period"')


def parse_freq(value, text=""):
    if isinstance(value, bool):
        _fail(text, "frequency must be a rational number", '"freq"')
    try:
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            f = Fraction(value)
            if f.denominator > 1000:
                raise ValueError
            return f
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        pass
    _fail(text, f"cannot read frequency {value!r}", str(value) if isinstance(value, str) else '"freq"')


def _number(obj, key, text, default=0.0):
    v = obj.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(text, f"{key!r} must be a number", f'"{key}"')
    return float(v)


def _terms(block, text):
    if not isinstance(block, list):
        _fail(text, "'terms' must be a list", '"terms"')
    out = []
    for item in block:
        if not isinstance(item, dict) or "freq" not in item:
            _fail(text, "each term needs a 'freq'", '"terms"')
        unknown = set(item) - {"freq", "cos", "sin"}
        if unknown:
            _fail(text, f"unknown term keys {sorted(unknown)}", f'"{sorted(unknown)[0]}"')
        f = parse_freq(item["freq"], text)
        if f < 0:
            _fail(text, "frequencies must be non-negative", '"freq"')
        out.append(TrigTerm(f, _number(item, "cos", text), _number(item, "sin", text)))
    return out


def _axis(block, text, axis):
    if isinstance(block, list):
        return _terms(block, text)
    if not isinstance(block, dict):
        _fail(text, f"'{axis}' must be an object or a list of terms", f'"{axis}"')
    terms = _terms(block.get("terms", []), text)
    c = _number(block, "constant", text)
    return ([TrigTerm(Fraction(0), c, 0.0)] if c else []) + terms


def spec_from_dict(obj, text="", name=""):
    if not isinstance(obj, dict):
        _fail(text, "curve spec must be a JSON object")
    if "kind" not in obj:
        _fail(text, "missing 'kind'")
    kind = KINDS.get(obj["kind"])
    if kind is None:
        _fail(text, f"unknown kind {obj['kind']!r}", '"kind"')
    period = parse_period(obj["period"], text) if "period" in obj else None
    name = obj.get("name", name)
    if kind == SUPPORT:
        if "terms" not in obj:
            _fail(text, "support spec needs 'terms'")
        return CurveSpec.support(_number(obj, "constant", text), _terms(obj["terms"], text), period=period, name=name)
    for axis in ("x", "y"):
        if axis not in obj:
            _fail(text, f"fourier spec needs '{axis}'")
    return CurveSpec.fourier(_axis(obj["x"], text, "x"), _axis(obj["y"], text, "y"), period=period, name=name)


def parse_curve_text(text, name="", validate=True):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    spec = spec_from_dict(obj, text, name)
    if validate:
        build_curve(spec)  # raises ValidationError subclasses
    return spec


def parse_curve_file(source, validate=True):
    """Parse a path, or JSON text when ``source`` is not an existing file."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        return parse_curve_text(path.read_text(encoding="utf-8"), name=path.stem, validate=validate)
    return parse_curve_text(source, validate=validate)


def _term_dict(t):
    d = {"freq": str(Fraction(t.freq))}
    if t.cos:
        d["cos"] = t.cos
    if t.sin:
        d["sin"] = t.sin
    return d


def _period_repr(period):
    k = Fraction(period / pi).limit_denominator(1000)
    if abs(float(k) * pi - period) < 1e-12 * period:
        return f"{k}pi"
    return period


def spec_to_dict(spec: CurveSpec):
    out = {"kind": "support" if spec.kind == SUPPORT else "fourier"}
    if spec.name:
        out["name"] = spec.name
    if spec.period is not None:
        out["period"] = _period_repr(spec.period)
    if spec.kind == SUPPORT:
        out["constant"] = spec.constant
        out["terms"] = [_term_dict(t) for t in spec.support_terms]
    else:
        for axis, terms in (("x", spec.x_terms), ("y", spec.y_terms)):
            const = sum(t.cos for t in terms if t.freq == 0)
            block = {"terms": [_term_dict(t) for t in terms if t.freq != 0]}
            if const:
                block["constant"] = const
            out[axis] = block
    return out


def dump_spec(spec: CurveSpec):
    return json.dumps(spec_to_dict(spec), indent=2)

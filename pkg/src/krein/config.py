"""JSON model definitions for the command-line front end.

Point interactions::

    {"kind": "point_interactions",
     "points": [{"position": 0.0, "delta_strength": -2.0},
                {"position": 3.0, "delta_prime_strength": -1.0},
                {"position": 5.0, "theta": 0.4, "alpha": 1, "beta": 0.5,
                 "gamma": 0, "delta": 1}]}

Robin half-plane::

    {"kind": "robin_halfspace", "period": 10.0, "grid_size": 256,
     "coefficients": {"type": "constant", "a": 1.0, "b": 1.0}}

with ``coefficients`` alternatively ``{"type": "piecewise", "default":
{"a": 1, "b": 0}, "pieces": [{"start": -2.5, "stop": 2.5, "a": 1, "b": 1}]}``
or ``{"type": "sampled", "a": [...], "b": [...]}``.
"""

import json
import math

from .point import InteractionPoint, PointModel
from .robin import RobinProblem

__all__ = ["ConfigError", "ConfigParseError", "load_config", "parse_config"]

POINT_KIND = "point_interactions"
ROBIN_KIND = "robin_halfspace"
_GENERAL_KEYS = {"theta", "alpha", "beta", "gamma", "delta"}


class ConfigError(ValueError):
    """The configuration is well-formed JSON but violates a model invariant."""


class ConfigParseError(ConfigError):
    """The configuration cannot be read or parsed."""


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_config(data)


def _number(d, key, where, default=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"{where}: missing required field '{key}'")
        return float(default)
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{where}: field '{key}' must be a finite number, got {v!r}")
    return float(v)


def _parse_point(d, i):
    where = f"points[{i}]"
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object")
    pos = _number(d, "position", where)
    shorthand = [k for k in ("delta_strength", "delta_prime_strength") if k in d]
    general = _GENERAL_KEYS & d.keys()
    if len(shorthand) > 1 or (shorthand and general):
        raise ConfigError(f"{where}: give either one shorthand strength or the general entries")
    try:
        if shorthand == ["delta_strength"]:
            return InteractionPoint.delta_potential(pos, _number(d, "delta_strength", where))
        if shorthand == ["delta_prime_strength"]:
            return InteractionPoint.delta_prime(pos, _number(d, "delta_prime_strength", where))
        return InteractionPoint(
            pos,
            theta=_number(d, "theta", where, 0.0),
            alpha=_number(d, "alpha", where, 1.0),
            beta=_number(d, "beta", where, 0.0),
            gamma=_number(d, "gamma", where, 0.0),
            delta=_number(d, "delta", where, 1.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_robin(data):
    period = _number(data, "period", "robin")
    size = data.get("grid_size")
    if isinstance(size, bool) or not isinstance(size, int):
        raise ConfigError("robin: 'grid_size' must be an integer")
    coeffs = data.get("coefficients")
    if not isinstance(coeffs, dict):
        raise ConfigError("robin: missing 'coefficients' object")
    kind = coeffs.get("type")
    try:
        if kind == "constant":
            a = _number(coeffs, "a", "coefficients")
            b = _number(coeffs, "b", "coefficients")
            return RobinProblem.constant(period, size, a, b)
        if kind == "piecewise":
            default = coeffs.get("default", {"a": 1.0, "b": 0.0})
            pieces = []
            for i, piece in enumerate(coeffs.get("pieces", [])):
                where = f"coefficients.pieces[{i}]"
                pieces.append(
                    tuple(_number(piece, k, where) for k in ("start", "stop", "a", "b"))
                )
            return RobinProblem.piecewise(
                period,
                size,
                pieces,
                default=(_number(default, "a", "default"), _number(default, "b", "default")),
            )
        if kind == "sampled":
            a, b = coeffs.get("a"), coeffs.get("b")
            if not isinstance(a, list) or not isinstance(b, list):
                raise ConfigError("coefficients: 'a' and 'b' must be lists of samples")
            if len(a) != size or len(b) != size:
                raise ConfigError(f"coefficients: expected {size} samples of a and b")
            return RobinProblem(period, a, b)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"robin: {exc}") from exc
    raise ConfigError(f"coefficients: unknown type {kind!r} (constant, piecewise, sampled)")


def parse_config(data):
    """Build a ``PointModel`` or ``RobinProblem`` from decoded JSON."""
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    kind = data.get("kind")
    if kind == POINT_KIND:
        points = data.get("points")
        if not isinstance(points, list) or not points:
            raise ConfigError("at least one interaction point required")
        parsed = [_parse_point(p, i) for i, p in enumerate(points)]
        try:
            return PointModel(sorted(parsed, key=lambda p: p.position))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if kind == ROBIN_KIND:
        return _parse_robin(data)
    raise ConfigError(f"unknown model kind {kind!r} (expected {POINT_KIND!r} or {ROBIN_KIND!r})")

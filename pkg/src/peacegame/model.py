"""Parameter vector, shock support and the logit contest success function.

Arms enter on a log scale, so only the difference ``x = y_g - y_r`` matters
for every quantity in the package. The rebels' arms receive an additive shock
``eps`` with bounded support ``[a_lo, a_hi]``; closed-form work assumes the
shock is uniform on that support.

Uncertainty conventions
-----------------------
``GameParams.width`` is the full support width ``a_hi - a_lo``.
``SymmetricParams.a_half`` is the half-width of ``[-a_half, a_half]``. The
optimizer and the critical-uncertainty formula are stated in half-widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class ParamError(ValueError):
    """Raised when a parameter vector violates one or more invariants.

    ``errors`` holds every violation found, as ``(code, message)`` pairs, with
    codes drawn from ``AlphaOutOfRange``, ``DegenerateSupport`` and
    ``NonFiniteField``.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{code}: {msg}" for code, msg in self.errors))

    @property
    def codes(self):
        return [code for code, _ in self.errors]


@dataclass(frozen=True)
class GameParams:
    y_g: float
    y_r: float
    alpha: float
    a_lo: float
    a_hi: float

    @property
    def x(self) -> float:
        """Pre-shock arms advantage of the government, ``y_g - y_r``."""
        return self.y_g - self.y_r

    @property
    def width(self) -> float:
        return self.a_hi - self.a_lo

    def checked(self) -> "GameParams":
        return validate(self)


@dataclass(frozen=True)
class SymmetricParams:
    """Game with shock support ``[-a_half, a_half]``.

    Exposes the same attribute surface as :class:`GameParams`, so every
    function that accepts a general parameter vector accepts this one too.
    """

    y_g: float
    y_r: float
    alpha: float
    a_half: float

    @property
    def a_lo(self) -> float:
        return -self.a_half

    @property
    def a_hi(self) -> float:
        return self.a_half

    @property
    def x(self) -> float:
        return self.y_g - self.y_r

    @property
    def width(self) -> float:
        return 2.0 * self.a_half

    def to_game(self) -> GameParams:
        return GameParams(self.y_g, self.y_r, self.alpha, -self.a_half, self.a_half)

    def with_half_width(self, a_half: float) -> "SymmetricParams":
        return SymmetricParams(self.y_g, self.y_r, self.alpha, a_half)

    def checked(self) -> "SymmetricParams":
        return validate(self)

    @classmethod
    def from_x(cls, alpha: float, x: float, a_half: float) -> "SymmetricParams":
        return cls(float(x), 0.0, alpha, a_half)


@dataclass(frozen=True)
class WinProb:
    p_g: float
    p_r: float


def validate(params):
    """Return ``params`` unchanged if every invariant holds, else raise.

    All violations are collected before raising so callers see the full list.
    """
    errors = []
    fields = {"y_g": params.y_g, "y_r": params.y_r, "alpha": params.alpha}
    if isinstance(params, SymmetricParams):
        fields["a_half"] = params.a_half
    else:
        fields["a_lo"] = params.a_lo
        fields["a_hi"] = params.a_hi
    for name, value in fields.items():
        if not math.isfinite(value):
            errors.append(("NonFiniteField", f"{name}={value!r} is not finite"))
    alpha = params.alpha
    if math.isfinite(alpha) and not 0.0 < alpha < 1.0:
        errors.append(("AlphaOutOfRange", f"alpha={alpha!r} must lie strictly inside (0, 1)"))
    lo, hi = params.a_lo, params.a_hi
    if math.isfinite(lo) and math.isfinite(hi) and not lo < hi:
        errors.append(("DegenerateSupport", f"shock support [{lo!r}, {hi!r}] is empty or a point"))
    if errors:
        raise ParamError(errors)
    return params


def logistic_gov(d):
    """``1 / (1 + exp(d))`` without overflow, for scalar or array ``d``."""
    if np.ndim(d) == 0:
        d = float(d)
        if d >= 0.0:
            z = math.exp(-d)
            return z / (1.0 + z)
        return 1.0 / (1.0 + math.exp(d))
    d = np.asarray(d, dtype=float)
    z = np.exp(-np.abs(d))
    return np.where(d >= 0.0, z / (1.0 + z), 1.0 / (1.0 + z))


def win_prob(params, eps) -> WinProb:
    """Contest success probabilities after the shock ``eps`` is realised.

    >>> win_prob(GameParams(1.0, 0.0, 0.7, -1, 1), 0.0).p_g
    0.7310585786300049
    """
    d = params.y_r + eps - params.y_g
    p_g = logistic_gov(d)
    p_r = logistic_gov(-d)
    return WinProb(p_g, p_r)


def gov_win_prob(params, eps):
    """Vectorised ``p_g`` only; used by the payoff integrals and the simulator."""
    return logistic_gov(params.y_r + np.asarray(eps, dtype=float) - params.y_g)


# ---------------------------------------------------------------------------
# key=value configuration files

GAME_KEYS = ("y_g", "y_r", "alpha", "a_lo", "a_hi", "a_half", "x")


def read_config(path) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment. Unknown keys raise."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in GAME_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: {key} is not a number: {value!r}") from None
    return values


def params_from_mapping(values: dict):
    """Build params from a mapping of the configuration keys.

    ``x`` is shorthand for ``y_g = x, y_r = 0``. Supplying ``a_half`` yields
    :class:`SymmetricParams`; otherwise both ``a_lo`` and ``a_hi`` are needed.
    """
    values = dict(values)
    if "x" in values:
        if "y_g" in values or "y_r" in values:
            raise ValueError("give either x or y_g/y_r, not both")
        values["y_g"], values["y_r"] = values.pop("x"), 0.0
    values.setdefault("y_g", 0.0)
    values.setdefault("y_r", 0.0)
    if "alpha" not in values:
        raise ValueError("alpha is required")
    if "a_half" in values:
        if "a_lo" in values or "a_hi" in values:
            raise ValueError("give either a_half or a_lo/a_hi, not both")
        params = SymmetricParams(values["y_g"], values["y_r"], values["alpha"], values["a_half"])
    else:
        missing = [k for k in ("a_lo", "a_hi") if k not in values]
        if missing:
            raise ValueError(f"missing shock support keys: {', '.join(missing)}")
        params = GameParams(values["y_g"], values["y_r"], values["alpha"], values["a_lo"], values["a_hi"])
    return validate(params)

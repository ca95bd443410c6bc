"""Transfer overhead, interaction-class cost and the positive-transfer metrics."""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    InvalidParams,
    NonPositiveBandwidth,
    NonPositiveDelay,
    ZeroBaselinePerformance,
    ZeroTrainingTime,
)

MBPS = 1e6


class InteractionClass(str, Enum):
    REAL_TIME = "RealTime"
    NON_REAL_TIME = "NonRealTime"
    ON_DEMAND = "OnDemand"


def _f1_linear(w_ref: float = MBPS) -> Callable[[float], float]:
    return lambda w: w / w_ref


def _f1_affine(w_ref: float = MBPS, offset: float = 0.0) -> Callable[[float], float]:
    return lambda w: offset + w / w_ref


def _f1_log(w_ref: float = MBPS) -> Callable[[float], float]:
    return lambda w: math.log1p(w / w_ref)


def _f2_reciprocal(d_ref: float = 1.0) -> Callable[[float], float]:
    return lambda d: d_ref / d


def _f2_negexp(d_ref: float = 1.0, scale: float = 1.0) -> Callable[[float], float]:
    return lambda d: scale * math.exp(-d / d_ref)


def _h_linear(c_h: float = 1.0) -> Callable[[float], float]:
    return lambda s: c_h * s


def _h_affine(c_h: float = 1.0, offset: float = 0.0) -> Callable[[float], float]:
    return lambda s: offset + c_h * s


# form name -> (factory, constants that must be strictly positive, constants that must be >= 0)
_FORMS = {
    "f1": {
        "linear": (_f1_linear, ("w_ref",), ()),
        "affine": (_f1_affine, ("w_ref",), ()),
        "log": (_f1_log, ("w_ref",), ()),
    },
    "f2": {
        "reciprocal": (_f2_reciprocal, ("d_ref",), ()),
        "negexp": (_f2_negexp, ("d_ref",), ("scale",)),
    },
    "h": {
        "linear": (_h_linear, (), ("c_h",)),
        "affine": (_h_affine, (), ("c_h",)),
    },
}

_DEFAULT_FORM = {"f1": "linear", "f2": "reciprocal", "h": "linear"}


@dataclass(frozen=True)
class FunctionSpec:
    """A named monotone function form plus its constants, e.g. ``FunctionSpec("f1", "log", {"w_ref": 1e6})``."""

    role: str
    form: str = ""
    constants: Mapping[str, float] = field(default_factory=dict)
    _fn: Callable[[float], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.role not in _FORMS:
            raise InvalidParams(f"unknown function role {self.role!r}")
        form = self.form or _DEFAULT_FORM[self.role]
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "constants", dict(self.constants))
        try:
            factory, positive, nonneg = _FORMS[self.role][form]
        except KeyError:
            raise InvalidParams(f"{self.role}: unknown form {form!r}; choose from {sorted(_FORMS[self.role])}") from None
        for name in positive:
            if name in self.constants and not self.constants[name] > 0:
                raise InvalidParams(f"{self.role}.{name} must be > 0")
        for name in nonneg:
            if name in self.constants and not self.constants[name] >= 0:
                raise InvalidParams(f"{self.role}.{name} must be >= 0")
        try:
            fn = factory(**self.constants)
        except TypeError as exc:
            raise InvalidParams(f"{self.role}: bad constants for form {form!r}: {exc}") from None
        object.__setattr__(self, "_fn", fn)

    def __call__(self, x: float) -> float:
        return self._fn(x)


def _check_monotone(fn: Callable[[float], float], grid: list[float], increasing: bool, label: str) -> None:
    values = [fn(x) for x in grid]
    for lo, hi in zip(values, values[1:]):
        if (hi < lo) if increasing else (hi > lo):
            direction = "non-decreasing" if increasing else "non-increasing"
            raise InvalidParams(f"{label} must be {direction}")


@dataclass(frozen=True)
class OverheadParams:
    alpha: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    m_costs: tuple[float, float, float] = (3.0, 2.0, 1.0)
    f1: FunctionSpec = field(default_factory=lambda: FunctionSpec("f1"))
    f2: FunctionSpec = field(default_factory=lambda: FunctionSpec("f2"))
    h: FunctionSpec = field(default_factory=lambda: FunctionSpec("h"))

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "m_costs", tuple(float(m) for m in self.m_costs))
        if len(self.alpha) != 4 or any(not (a >= 0 and math.isfinite(a)) for a in self.alpha):
            raise InvalidParams("alpha must be four finite weights >= 0")
        if len(self.m_costs) != 3:
            raise InvalidParams("m_costs must hold (M1, M2, M3)")
        m1, m2, m3 = self.m_costs
        if not (m3 > 0 and m1 >= m2 >= m3 and math.isfinite(m1)):
            raise InvalidParams("m_costs must satisfy M1 >= M2 >= M3 > 0")
        for spec, role in ((self.f1, "f1"), (self.f2, "f2"), (self.h, "h")):
            if spec.role != role:
                raise InvalidParams(f"{role} slot holds a {spec.role} function")
        grid = [10.0 ** k for k in range(-3, 10)]
        _check_monotone(self.f1, grid, True, "f1")
        _check_monotone(self.f2, grid, False, "f2")
        _check_monotone(self.h, [float(s) for s in range(0, 33)], True, "h")


def interaction_cost(
    cls: InteractionClass,
    params: OverheadParams,
    rush_multiplier: float | None = None,
) -> float:
    """Class cost M1/M2/M3, scaled by ``1 + rush_multiplier`` when a load multiplier applies."""
    cls = InteractionClass(cls)
    m1, m2, m3 = params.m_costs
    base = {InteractionClass.REAL_TIME: m1, InteractionClass.NON_REAL_TIME: m2}.get(cls, m3)
    if rush_multiplier is None:
        return base
    if rush_multiplier < 0:
        raise ValueError("rush_multiplier must be >= 0")
    return base * (1.0 + rush_multiplier)


def compute_overhead(
    bandwidth: float,
    delay: float,
    cls: InteractionClass,
    security_level: int,
    params: OverheadParams,
    rush_multiplier: float | None = None,
) -> float:
    """Weighted transfer overhead over bandwidth, delay, interaction class and security terms.

    ``bandwidth`` and ``delay`` are the pair's required E2E bandwidth (bits/s)
    and delay bound (s). The rush multiplier only touches the class term.
    """
    if not bandwidth > 0:
        raise NonPositiveBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    if not delay > 0:
        raise NonPositiveDelay(f"delay must be > 0, got {delay}")
    if security_level < 0:
        raise ValueError("security_level must be >= 0")
    a1, a2, a3, a4 = params.alpha
    return (
        a1 * params.f1(bandwidth)
        + a2 * params.f2(delay)
        + a3 * interaction_cost(cls, params, rush_multiplier)
        + a4 * params.h(security_level)
    )


def eta(p_tl: float, p_traditional: float) -> float:
    if p_traditional <= 0:
        raise ZeroBaselinePerformance("traditional performance must be > 0")
    return p_tl / p_traditional


def tau(t_traditional: float, t_tl: float) -> float:
    if t_traditional <= 0 or t_tl <= 0:
        raise ZeroTrainingTime("training times must be > 0")
    return t_traditional / t_tl


def is_positive_tl(eta_value: float, tau_value: float) -> bool:
    return eta_value > 1.0 and tau_value > 1.0


@dataclass(frozen=True)
class TransferMetrics:
    eta: float
    tau: float
    theta: float
    positive: bool = field(init=False)

    def __post_init__(self):
        if self.eta < 0 or self.tau < 0 or self.theta < 0:
            raise ValueError("eta, tau and theta must be >= 0")
        object.__setattr__(self, "positive", is_positive_tl(self.eta, self.tau))

"""Quantized parameter transfer: payload size, accuracy impact and retune speedup."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .costmodel import tau
from .errors import UnknownScheme

QAT_GAIN_OVER_FBGEMM = 1.0


class QuantScheme(str, Enum):
    FLOAT32 = "Float32"
    DEFAULT8 = "Default8"
    FBGEMM8 = "Fbgemm8"
    QAT8 = "Qat8"

    @property
    def bits_per_weight(self) -> int:
        return 32 if self is QuantScheme.FLOAT32 else 8


def payload_bits(parameter_count: int, scheme: QuantScheme) -> int:
    if parameter_count <= 0:
        raise ValueError("parameter_count must be > 0")
    return parameter_count * QuantScheme(scheme).bits_per_weight


@dataclass(frozen=True)
class AccuracyModel:
    """Accuracy (percent) per scheme relative to the float reference.

    Only the FBGEMM and Default offsets are free; QAT sits exactly one point
    above FBGEMM. Construction rejects any model that breaks the ordering
    Float32 >= Qat8 >= Fbgemm8 >= Default8 or leaves [0, 100].
    """

    base_accuracy: float
    fbgemm_delta: float
    default_delta: float

    def __post_init__(self):
        if not 0.0 <= self.base_accuracy <= 100.0:
            raise ValueError("base_accuracy must lie in [0, 100]")
        if self.fbgemm_delta + QAT_GAIN_OVER_FBGEMM > 0:
            raise ValueError("fbgemm_delta must be <= -1 so that Qat8 does not exceed Float32")
        if self.default_delta > self.fbgemm_delta:
            raise ValueError("default_delta must be <= fbgemm_delta")
        if self.base_accuracy + self.default_delta < 0:
            raise ValueError("Default8 accuracy would fall below 0")

    def accuracy(self, scheme: QuantScheme) -> float:
        """Pre-retune accuracy.

        Qat8 is computed first and Fbgemm8 derived from it by subtracting one
        point, which is exact in binary floating point for values >= 1, so
        the one-point gap holds without rounding error.
        """
        scheme = QuantScheme(scheme)
        if scheme is QuantScheme.FLOAT32:
            return self.base_accuracy
        qat = (self.base_accuracy + self.fbgemm_delta) + QAT_GAIN_OVER_FBGEMM
        if scheme is QuantScheme.QAT8:
            return qat
        fbgemm = qat - QAT_GAIN_OVER_FBGEMM
        if scheme is QuantScheme.FBGEMM8:
            return fbgemm
        return min(self.base_accuracy + self.default_delta, fbgemm)


def predicted_accuracy(model: AccuracyModel, scheme: QuantScheme, retuned: bool = False) -> float:
    try:
        scheme = QuantScheme(scheme)
    except ValueError:
        raise UnknownScheme(scheme) from None
    if retuned:
        return model.base_accuracy
    return min(100.0, max(0.0, model.accuracy(scheme)))


@dataclass(frozen=True)
class RetuneModel:
    retrain_time: float
    full_train_time: float
    restores_accuracy: bool = True

    def __post_init__(self):
        if not (self.retrain_time > 0 and self.full_train_time > 0):
            raise ValueError("retune times must be > 0")


def retune_speedup(model: RetuneModel) -> float:
    return tau(model.full_train_time, model.retrain_time)


def tradeoff_table(model: AccuracyModel, parameter_count: int) -> list[dict[str, object]]:
    """One row per scheme: payload size and accuracy before/after retuning."""
    reference = payload_bits(parameter_count, QuantScheme.FLOAT32)
    rows = []
    for scheme in QuantScheme:
        bits = payload_bits(parameter_count, scheme)
        rows.append(
            {
                "scheme": scheme.value,
                "bits_per_weight": scheme.bits_per_weight,
                "parameter_count": parameter_count,
                "payload_bits": bits,
                "payload_ratio": bits / reference,
                "accuracy": predicted_accuracy(model, scheme, retuned=False),
                "accuracy_retuned": predicted_accuracy(model, scheme, retuned=True),
            }
        )
    return rows

"""Exception hierarchy.  Every error carries a stable ``code`` for the CLI."""
from __future__ import annotations


class MeasureError(ValueError):
    code = "MeasureError"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class NotNormalized(MeasureError):
    code = "NotNormalized"


class NonPositiveProbability(MeasureError):
    code = "NonPositiveProbability"


class BadDivisionNumber(MeasureError):
    code = "BadDivisionNumber"


class IndexOutOfRange(MeasureError):
    code = "IndexOutOfRange"


class NotGridRational(MeasureError):
    code = "NotGridRational"


class GenerationTooLarge(MeasureError):
    code = "GenerationTooLarge"


class ADCClassRequired(MeasureError):
    code = "ADCClassRequired"


class StripNotContained(MeasureError):
    code = "StripNotContained"


class DimensionMismatch(MeasureError):
    code = "DimensionMismatch"


class OutOfOpenBox(MeasureError):
    code = "OutOfOpenBox"

    def __init__(self, message: str, index: int | None = None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.index is not None:
            d["index"] = self.index
            v = self.value
            d["value"] = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return d


class DegenerateRadii(MeasureError):
    code = "DegenerateRadii"


class SpecFormatError(MeasureError):
    code = "SpecFormatError"

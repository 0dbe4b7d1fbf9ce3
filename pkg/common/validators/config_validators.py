"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from enum import Enum
from itertools import product
from typing import Optional

from validataclass.dataclasses import Default, ValidataclassMixin, validataclass
from validataclass.exceptions import DataclassPostValidationError, ValidationError
from validataclass.validators import (
    EnumValidator,
    FloatValidator,
    IntegerValidator,
    ListValidator,
    Noneable,
    StringValidator,
)

from common.models import OutputFormat, Quantity
from sqrac.protocol import sharpness_from_theta_lambda
from util.angles import to_radians


class TableId(Enum):
    I = 'I'  # noqa: E741
    II = 'II'
    III = 'III'
    IV = 'IV'
    V = 'V'
    VI = 'VI'
    VII = 'VII'
    VIII = 'VIII'
    ALL = 'all'


def float_list_validator(min_value: float, max_value: float) -> Noneable:
    return Noneable(ListValidator(FloatValidator(allow_integers=True, min_value=min_value, max_value=max_value), min_length=1))


@validataclass
class RunConfigInput(ValidataclassMixin):
    command: str = StringValidator(min_length=1, max_length=32)

    eta0: Optional[list[float]] = float_list_validator(0, 1), Default(None)
    eta1: Optional[list[float]] = float_list_validator(0, 1), Default(None)
    # angles stay in degrees here, they are converted once they become protocol parameters
    alpha: Optional[list[float]] = float_list_validator(0, 45), Default(None)
    beta: Optional[list[float]] = float_list_validator(0, 45), Default(None)
    theta_lambda: Optional[list[float]] = float_list_validator(0, 22.5), Default(None)

    grid: Optional[int] = Noneable(IntegerValidator(min_value=2, max_value=10001)), Default(None)
    workers: Optional[int] = Noneable(IntegerValidator(min_value=1, max_value=256)), Default(None)
    seed: Optional[int] = Noneable(IntegerValidator(min_value=0)), Default(None)
    format: OutputFormat = EnumValidator(OutputFormat), Default(OutputFormat.CSV)
    out: Optional[str] = Noneable(StringValidator(min_length=1, max_length=4096)), Default(None)
    tol: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=0, max_value=1)), Default(None)

    p_ab: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=0, max_value=1)), Default(None)
    p_ac: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=0, max_value=1)), Default(None)
    i_ab: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=-4, max_value=4)), Default(None)
    i_ac: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=-4, max_value=4)), Default(None)

    duration: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=0)), Default(None)
    total_counts: Optional[float] = Noneable(FloatValidator(allow_integers=True, min_value=0)), Default(None)
    repeats: int = IntegerValidator(min_value=1, max_value=100000), Default(1)
    groups: Optional[int] = Noneable(IntegerValidator(min_value=2)), Default(None)
    quantity: Optional[Quantity] = Noneable(EnumValidator(Quantity)), Default(None)

    which: TableId = EnumValidator(TableId), Default(TableId.ALL)

    def __post_init__(self):
        if self.eta1 is not None and self.theta_lambda is not None:
            raise DataclassPostValidationError(
                error=ValidationError(code='sharpness_conflict', reason='eta1 and theta_lambda both set the second sharpness.'),
            )
        if (self.p_ab is None) != (self.p_ac is None):
            raise DataclassPostValidationError(
                error=ValidationError(code='incomplete_probabilities', reason='p_ab and p_ac have to be given together.'),
            )
        if (self.i_ab is None) != (self.i_ac is None):
            raise DataclassPostValidationError(
                error=ValidationError(code='incomplete_chsh_values', reason='i_ab and i_ac have to be given together.'),
            )
        for name in ('duration', 'total_counts'):
            if getattr(self, name) == 0:
                raise DataclassPostValidationError(error=ValidationError(code='not_positive', reason=f'{name} has to be positive.'))

    def second_sharpness(self) -> Optional[list[float]]:
        if self.theta_lambda is not None:
            return [sharpness_from_theta_lambda(to_radians(theta_lambda)) for theta_lambda in self.theta_lambda]
        return self.eta1

    def sharpness_pairs(self) -> list[tuple[float, float]]:
        """
        Expands the sharpness flags into (eta0, eta1) pairs: the cartesian product when both sides are given, the
        equal-sharpness diagonal when only one side is.
        """
        second = self.second_sharpness()
        if self.eta0 is None:
            return [(eta, eta) for eta in second or []]
        if second is None:
            return [(eta, eta) for eta in self.eta0]
        return list(product(self.eta0, second))

    def angle_pairs(self) -> list[tuple[float, float]]:
        return list(product(self.alpha or [45.0], self.beta or [45.0]))

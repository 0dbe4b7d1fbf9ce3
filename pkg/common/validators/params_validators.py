"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from validataclass.dataclasses import Default, ValidataclassMixin, validataclass
from validataclass.validators import FloatValidator

from sqrac.protocol import QUARTER_PI, ProtocolParams

from .fields import DegreesToRadiansValidator


@validataclass
class ProtocolParamsInput(ValidataclassMixin):
    eta0: float = FloatValidator(allow_integers=True, min_value=0, max_value=1)
    eta1: float = FloatValidator(allow_integers=True, min_value=0, max_value=1)
    # degrees on input, radians after validation and as default
    alpha: float = DegreesToRadiansValidator(min_value=0, max_value=45), Default(QUARTER_PI)
    beta: float = DegreesToRadiansValidator(min_value=0, max_value=45), Default(QUARTER_PI)

    def to_protocol_params(self) -> ProtocolParams:
        return ProtocolParams(eta0=self.eta0, eta1=self.eta1, alpha=self.alpha, beta=self.beta)

"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from typing import Any, Optional

from validataclass.validators import FloatValidator

from util.angles import to_radians


class DegreesToRadiansValidator(FloatValidator):
    """
    Accepts an angle in degrees, checks it against the configured degree range and returns it in radians.
    """

    def __init__(self, *, min_value: Optional[float] = None, max_value: Optional[float] = None):
        super().__init__(min_value=min_value, max_value=max_value, allow_integers=True)

    def validate(self, input_data: Any, **kwargs) -> float:
        return to_radians(super().validate(input_data, **kwargs))

"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import dataclasses
import json
from enum import Enum
from typing import Any

import numpy as np


def convert_to_serializable_value(obj: Any) -> Any:
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, bytes):
        return obj.decode()

    # result models are plain dataclasses, validated inputs bring their own to_dict
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, 'to_dict'):
            return obj.to_dict()
        return {item.name: getattr(obj, item.name) for item in dataclasses.fields(obj)}

    # Fallback to either the object's attribute dictionary or cast it to a string
    if hasattr(obj, '__dict__'):
        return obj.__dict__
    return str(obj)


class DefaultJSONEncoder(json.JSONEncoder):
    def default(self, obj: Any):
        return convert_to_serializable_value(obj)

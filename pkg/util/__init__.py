from ._log import log
from .angles import to_degrees, to_radians

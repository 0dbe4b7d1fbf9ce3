import datetime
import sys

from decouple import config


def log(*args, **kwargs):
    """
    print() to stderr, prefixed with a timestamp. Silenced by SQRAC_QUIET.
    """
    if config('SQRAC_QUIET', default=False, cast=bool):
        return
    kwargs["file"] = sys.stderr
    print(datetime.datetime.now(), *args, **kwargs)

"""
This file contains functions for debugging and logging. Debug output is sent
to any object with a 'write' function, filtered by a numeric level.

Author(s): David Marchant
"""

from time import perf_counter
from typing import Any, Tuple

from .validation import check_type
from ..core.vars import DEBUG_NAMES, DEBUG_INFO


def setup_debugging(print:Any=None, logging:int=0)->Tuple[Any,int]:
    """Create a place for debug messages to be sent. Always returns a place,
    along with a logging level."""
    check_type(logging, int, hint="setup_debugging.logging")
    if print is None:
        return None, 0

    writeable = getattr(print, "write", None)
    if not writeable or not callable(writeable):
        raise TypeError(f"Print object does not implement required "
            "'write' function")

    return print, logging


def print_debug(print_target, debug_level, msg, level)->None:
    """Function to print a message to the debug target, if its level exceeds
    the given one."""
    if print_target is None or level > debug_level:
        return
    status = DEBUG_NAMES.get(level, DEBUG_NAMES[DEBUG_INFO])
    print(f"{status}: {msg}", file=print_target)


class DebugTimer:
    """Context manager reporting the wall time of a block through
    print_debug once the block exits."""
    def __init__(self, print_target, debug_level:int, label:str,
            level:int=DEBUG_INFO)->None:
        self.print_target = print_target
        self.debug_level = debug_level
        self.label = label
        self.level = level
        self.elapsed = 0.0

    def __enter__(self)->"DebugTimer":
        self._start = perf_counter()
        return self

    def __exit__(self, *exc)->bool:
        self.elapsed = perf_counter() - self._start
        print_debug(self.print_target, self.debug_level,
            f"{self.label} took {self.elapsed:.3f}s", self.level)
        return False

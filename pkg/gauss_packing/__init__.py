from .core import *
from .suites import *

from .version import __name__, __fullname__, __version__

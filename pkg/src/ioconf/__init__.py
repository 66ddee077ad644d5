"""Input-output conformance: ioco and iocos, their modal logics, and GSOS
formats that make iocos a precongruence."""

from .errors import CapExceeded, FragmentError, IoconfError, ParseError, UnknownStateError, ValidationError
from .lts import DELTA, Action, Lts, action, format_lts, load_lts, parse_lts

__version__ = "0.1.0"

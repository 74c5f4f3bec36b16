"""Certified enclosures and two-sided bounds for the pi function and its log interpolation"""

from .core import DomainError, Enclosure, InterpPoint, RouteMismatchError  # noqa
from .core import StirlingShift
from .identities import (
    TailPolicy,
    iota_enclosure,
    m_enclosure,
    mhat_enclosure,
    pi_enclosure,
)
from .bounds import BoundId
from .verify import GridScanner, GridSpec, ScanReport
from .figures import FigureBuilder, FigureId, FigureSeries

from ._version import __version__

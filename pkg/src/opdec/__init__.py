"""Operadic categories and décalage constructions on finite categories."""

from .fincat import FinCat, Functor, LtObject
from .moddec import LaxTriangleMor, LtOver, OverS
from .operadic import OperadicStructure
from .report import Report, Violation
from .simplicial import TruncatedSSet
from .sskel import SMap

__all__ = ["FinCat", "Functor", "LtObject", "LaxTriangleMor", "LtOver", "OverS",
           "OperadicStructure", "Report", "Violation", "TruncatedSSet", "SMap"]
__version__ = "0.1.0"

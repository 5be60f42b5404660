"""Workbench for the two-parameter deformed Heisenberg Hopf algebra U_{h,w}(H(4))."""

from .series import TruncatedSeries, exp_series, sinh_over
from .pbw import PBWElement, TensorElement, HopfStructure

__version__ = "0.1.0"

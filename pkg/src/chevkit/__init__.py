"""Root systems, Chevalley groups over commutative rings, and machine checks of the identities they satisfy."""

from __future__ import annotations

__version__ = "0.1.0"

from .report import CheckReport
from .rings import parse_ring
from .roots import RootSystem, build_root_system, parse_system

__all__ = ["CheckReport", "RootSystem", "__version__", "build_root_system", "parse_ring", "parse_system"]

"""Executable CoAP model with attacker capabilities and a protocol-dialect wrapper."""

from .dialect import D, UD, UDC
from .model import System
from .search import rewrite, search, transitions

__all__ = ["D", "UD", "UDC", "System", "rewrite", "search", "transitions"]

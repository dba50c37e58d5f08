"""
chulaws - exact checks of Chu-category laws over finite fields.

Objects are pairings of finite-dimensional F_p spaces; the laws of the
*-autonomous structure, the topological-vector-space model and the
k[x]/(x^n) module ring are checked with exact modular arithmetic.
"""

__version__ = "0.1.0"

from chulaws.core.engine import LawEngine
from chulaws.core.parser import ScriptParser, parse_program
from chulaws.core.registry import LawRegistry

__all__ = ["LawEngine", "LawRegistry", "ScriptParser", "parse_program"]

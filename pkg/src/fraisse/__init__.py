"""Weak amalgamation, weak Fraisse sequences and Banach-Mazur games on countable categories."""

__version__ = "0.1.0"

from .abstract import FiniteCategory, dump_abstract_category, load_abstract_category
from .core import Arrow, Category, Sequence, SequenceArrow, constant_sequence, verify_seq_arrow
from .errors import FraisseError
from .verdict import Status, Verdict

"""Exact finite-ball geometry for small hyperbolic groups and their endomorphisms."""
from .groups import (BudgetExceeded, DirectProduct, FiniteGroup, ForeignLetter,
                     FreeGroup, FreeProduct, GroupModel, MatchedAlphabet, OutOfBall,
                     invert_word, prefix, validate_relations)
from .presets import PRESETS, get_preset, load_group

__all__ = [
    "BudgetExceeded", "DirectProduct", "FiniteGroup", "ForeignLetter", "FreeGroup",
    "FreeProduct", "GroupModel", "MatchedAlphabet", "OutOfBall", "PRESETS",
    "get_preset", "invert_word", "load_group", "prefix", "validate_relations",
]

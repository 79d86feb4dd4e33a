"""Regular separability of Büchi VASS languages from the Dyck language.

The main entry points are :func:`decide` (a Büchi VASS over a Dyck alphabet
against D_n) and :func:`decide_pair` (two Büchi VASS over a shared alphabet).
"""
from .core import (
    EPSILON,
    BuchiVass,
    Configuration,
    DyckAlphabet,
    NamedAlphabet,
    RegsepError,
    RleWord,
    Transition,
    UPWord,
    ensure_progress,
    make_vass,
    validate,
)
from .karpmiller import OMEGA, BudgetExceeded, KarpMillerGraph, build_km
from .oracle import member_dyck, member_lang, member_p, member_s
from .pump import build_pump, build_vbar
from .ratlp import Certificate, Solution, feasible
from .separability import (
    Budgets,
    CapExceeded,
    Inseparable,
    PAtom,
    SAtom,
    Separable,
    analyse,
    basic_separator_cover,
    decide,
    decide_pair,
    enumerate_profiles,
    flower_witness_word,
    verify_flower,
)
from .transduce import reduce_to_dyck

__all__ = [name for name in dir() if not name.startswith("_")]

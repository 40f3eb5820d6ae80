"""Finite twisted quandles: f-shelves, f-racks, f-quandles and f-crossed sets."""
from .core import (
    LEVELS, AxiomReport, FTable, TableFormatError, ConstructionError,
    WellDefinednessError, validate, derived_f, is_f_endomorphism, is_latin,
    make_trivial, make_conjugation, make_f_dihedral, make_alexander,
    translation_crossed_set,
)
from .groups import GroupTable

__version__ = "0.1.0"

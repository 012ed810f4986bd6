"""Prolongational analysis of wandering planar flows.

Thin wrapper over the C++ core: orbit-space models (.fol files), exact 1-D
flows (.lin files), chordal systems and the numerical reference fields.
"""

from ._wanderflow import (
    ChordalSystem,
    FlowError,
    FoliationModel,
    LineFlowSpec,
    PointSet1D,
    RecursiveSpec,
    Vec2,
    anti_isomorphic,
    derive_chordal,
    equivalent,
    estimate_lambda1,
    find_link,
    first_integral,
    integrate,
    isomorphic,
    load_fol,
    load_lin,
    no_return,
    parse_fol,
    parse_rec_term,
    print_fol,
    saddle_closed_form,
)

__all__ = [
    "ChordalSystem",
    "FlowError",
    "FoliationModel",
    "LineFlowSpec",
    "PointSet1D",
    "RecursiveSpec",
    "Vec2",
    "anti_isomorphic",
    "derive_chordal",
    "equivalent",
    "estimate_lambda1",
    "find_link",
    "first_integral",
    "integrate",
    "isomorphic",
    "load_fol",
    "load_lin",
    "no_return",
    "parse_fol",
    "parse_rec_term",
    "print_fol",
    "saddle_closed_form",
]

"""Automata, linear representations and closure constructions."""

from .becker import CartierModuleElement, becker_automatize_mod_p, cartier_orbit_dfao, degree_bound, unit_denominator
from .dfao import DFAO, digits
from .periodicity import PeriodicityVerdict, eventual_periodicity, periodic_from
from .regular import LinearRepresentation, kernel_closure, representation_product
from .unitprod import UnitProduct, unit_product_automatize, unit_product_root_of_unity

__all__ = [
    "CartierModuleElement",
    "DFAO",
    "LinearRepresentation",
    "PeriodicityVerdict",
    "UnitProduct",
    "becker_automatize_mod_p",
    "cartier_orbit_dfao",
    "degree_bound",
    "digits",
    "eventual_periodicity",
    "kernel_closure",
    "periodic_from",
    "representation_product",
    "unit_product_automatize",
    "unit_denominator",
    "unit_product_root_of_unity",
]

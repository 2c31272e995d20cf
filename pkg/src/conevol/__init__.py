"""Computational checks of the refined cone-volume inequality for convex bodies
with centroid at the origin."""
from .polytope import Polytope, Facet, PolytopeError, from_halfspaces, from_vertices
from .measures import DiscreteMeasure, cone_volume_measure, surface_area_measure
from .checker import ConditionReport, check_all_facets, check_direction

__all__ = [
    "Polytope", "Facet", "PolytopeError", "from_halfspaces", "from_vertices",
    "DiscreteMeasure", "cone_volume_measure", "surface_area_measure",
    "ConditionReport", "check_all_facets", "check_direction",
]

__version__ = "0.1.0"

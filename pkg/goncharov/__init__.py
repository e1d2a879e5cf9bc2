"""Goncharov - Abel-Goncharov polynomials by three constructions, plus bounds."""

from goncharov.base import GoncharovConstruction, GoncharovResult
from goncharov.nodes import NodeSequence, scale_nodes
from goncharov.interpolation import InterpolationConstruction, build_interpolation
from goncharov.recursion import RecursionConstruction, build_recursion
from goncharov.genetic import (
    GeneticConstruction,
    build_genetic,
    derivative_at_node,
    derivative_genetic,
    genetic_index_tuples,
)
from goncharov.bounds import goncharov_bound, sharp_bound

CONSTRUCTIONS = {
    InterpolationConstruction.name: InterpolationConstruction,
    RecursionConstruction.name: RecursionConstruction,
    GeneticConstruction.name: GeneticConstruction,
}

__all__ = [
    "CONSTRUCTIONS",
    "GoncharovConstruction",
    "GoncharovResult",
    "NodeSequence",
    "scale_nodes",
    "InterpolationConstruction",
    "build_interpolation",
    "RecursionConstruction",
    "build_recursion",
    "GeneticConstruction",
    "build_genetic",
    "derivative_at_node",
    "derivative_genetic",
    "genetic_index_tuples",
    "goncharov_bound",
    "sharp_bound",
]

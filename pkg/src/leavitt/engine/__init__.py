"""Symbolic engines for graph, ultragraph and Exel-Laca algebras."""

from .core import (
    UNKNOWN,
    Element,
    Engine,
    EngineMismatch,
    MissingGeneratorAssignment,
    ZeroElement,
    degree_components,
    equal,
    format_element,
    multiply,
    star,
)
from .exel_laca import ELEngine, el_reduce
from .graph import GraphEngine, normalize
from .homs import GeneratorMap, apply_hom
from .ultra import UltraEngine, identification_graph

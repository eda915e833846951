"""
Domain models package
"""
from grapeqi.models.grape import Stem, GrapeBunch, Twig, PathSubstem, Classification, edge_key
from grapeqi.models.graph import SimpleGraph, ProductPair
from grapeqi.models.cube_complex import Cube, CubeComplex, HyperplaneReport, format_key
from grapeqi.models.intersection import RISimplex, ReducedIntersectionComplex, coarse_type
from grapeqi.models.trace import ReductionStep, ReductionTrace
from grapeqi.models.verdict import QiClassDescriptor, RaagVerdict

__all__ = [
    'Stem', 'GrapeBunch', 'Twig', 'PathSubstem', 'Classification', 'edge_key',
    'SimpleGraph', 'ProductPair',
    'Cube', 'CubeComplex', 'HyperplaneReport', 'format_key',
    'RISimplex', 'ReducedIntersectionComplex', 'coarse_type',
    'ReductionStep', 'ReductionTrace',
    'QiClassDescriptor', 'RaagVerdict',
]

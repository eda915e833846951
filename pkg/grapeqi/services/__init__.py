"""
Services package for the grape pipeline
"""
from grapeqi.services.canonical import CanonicalForm, canonical_form, rooted_canonical_form, stem_center
from grapeqi.services.reductions import ReductionService, SubstemClass
from grapeqi.services.qi_decider import QiDecisionService, free_rank_formula, star_b4_rank, tree_b2_rank
from grapeqi.services.intersection_complex import IntersectionComplexService
from grapeqi.services.configuration_space import ConfigurationSpaceService
from grapeqi.services.product_subcomplexes import ProductSubcomplexService, product_cells
from grapeqi.services.formats import GrapeFormatService, dump_json

__all__ = [
    'CanonicalForm',
    'canonical_form',
    'rooted_canonical_form',
    'stem_center',
    'ReductionService',
    'SubstemClass',
    'QiDecisionService',
    'free_rank_formula',
    'star_b4_rank',
    'tree_b2_rank',
    'IntersectionComplexService',
    'ConfigurationSpaceService',
    'ProductSubcomplexService',
    'product_cells',
    'GrapeFormatService',
    'dump_json',
]

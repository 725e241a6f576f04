"""Primitive collections, primitive relations and Fano indices of smooth toric fans."""

__version__ = "0.1.0"

from .fan import Fan, FanError, InvariantError, is_complete, is_smooth, make_fan
from .relations import PrimitiveRelation, all_primitive_relations, primitive_collections, primitive_relation
from .mori import (PicClass, RelationType, anticanonical_class, classify_relation_type,
                   fano_index, is_extremal, is_fano, mori_cone_generators, picard_rank)
from .constructions import (blow_down, direct_fan_from_relations, h_construction,
                            product_fan, projective_space_fan, projectivize_split,
                            transform_relations)
from .isomorphism import UnimodularMap, find_isomorphism, fingerprint
from .catalog import (catalog_fano5_index2, del_pezzo_degree7, enumerate_smooth_fano_surfaces,
                      example_seven_fold, is_splitting_fan, split_bundle_relations)

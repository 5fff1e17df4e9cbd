"""Exact computation in Thompson's group F with generators x0, x1.

Elements are reduced tree pair diagrams; word length is computed exactly
from caret types, and generator actions are available both as general
multiplication and as local tree rotations.
"""

from .convexity import Ball, SearchReport, AuditReport, audit_path, ball, inside_ball_search, witness_search
from .dynamics import alpha_index, apply_rotation, rotation_applicable
from .element import (
    GENERATORS,
    Element,
    StructureError,
    TreePair,
    apply_generator,
    apply_word,
    equals,
    generator,
    identity,
    invert,
    multiply,
    reduce,
)
from .metric import CaretType, classify_carets, distance, fordham_length
from .normalform import (
    NormalForm,
    burillo_D,
    is_unique_normal_form,
    leaf_exponents,
    normal_form_to_pair,
    normalize,
    pair_to_normal_form,
)
from .tree import Tree, TreeParseError, build_balanced, caret_positions, parse, serialize
from .witness import WitnessElement, build_witness, validate_witness

__version__ = "0.1.0"

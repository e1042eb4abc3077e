"""Toolkit for subsequential finite-state transducers.

Random machine generation under uniformity constraints, random-walk dataset
construction with transition-coverage analytics, OSTIA state-merging
inference, and hand-built SCAN command blocks, all sharing one plain-text
machine/dataset format.
"""

__version__ = "0.1.0"

from .dataset import (
    CoverageReport,
    Dataset,
    Split,
    WalkConfig,
    compare_split_coverage,
    coverage,
    length_cutoff_for_fraction,
    random_walk,
    sample_walk,
    split,
)
from .errors import (
    AlphabetError,
    ConsistencyError,
    ExhaustionError,
    GenerationError,
    NotTrimError,
    ParseError,
    PathError,
    SfstError,
    SplitError,
)
from .formats import (
    machine_hash,
    parse_machine,
    parse_pairs,
    serialize_machine,
    serialize_pairs,
)
from .generate import (
    RNG_ALGORITHM,
    GenConfig,
    TransitionMatrixSet,
    attach_outputs,
    generate,
    make_rng,
    sample_matrices,
)
from .machine import (
    LAMBDA,
    Sfst,
    TokenString,
    check_path_homomorphism,
    is_accessible,
    is_coaccessible,
    is_trim,
    language,
    run_to_state,
    transduce,
    trim,
)
from .minimize import equivalent, minimize, same_structure
from .ostia import OstiaRun, Ptt, build_ptt, make_onward, ostia_infer, run_ostia
from .scan import (
    PRIMITIVES,
    SymbolTable,
    augment_with_repetition,
    build_scan_block,
    replicate_subgraph,
    scan_reference_eval,
    scan_symbol_table,
)

__all__ = [
    "AlphabetError",
    "ConsistencyError",
    "CoverageReport",
    "Dataset",
    "ExhaustionError",
    "GenConfig",
    "GenerationError",
    "LAMBDA",
    "NotTrimError",
    "OstiaRun",
    "ParseError",
    "PathError",
    "PRIMITIVES",
    "Ptt",
    "RNG_ALGORITHM",
    "Sfst",
    "SfstError",
    "Split",
    "SplitError",
    "SymbolTable",
    "TokenString",
    "TransitionMatrixSet",
    "WalkConfig",
    "attach_outputs",
    "augment_with_repetition",
    "build_ptt",
    "build_scan_block",
    "check_path_homomorphism",
    "compare_split_coverage",
    "coverage",
    "equivalent",
    "generate",
    "is_accessible",
    "is_coaccessible",
    "is_trim",
    "language",
    "length_cutoff_for_fraction",
    "machine_hash",
    "make_onward",
    "make_rng",
    "minimize",
    "ostia_infer",
    "parse_machine",
    "parse_pairs",
    "random_walk",
    "replicate_subgraph",
    "run_ostia",
    "run_to_state",
    "same_structure",
    "sample_matrices",
    "sample_walk",
    "scan_reference_eval",
    "scan_symbol_table",
    "serialize_machine",
    "serialize_pairs",
    "split",
    "transduce",
    "trim",
]

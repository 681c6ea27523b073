"""Conceptual controversy maps over convention-annotated news corpora."""

from .context import ContextError, CxtFormatError, FormalContext, read_cxt, write_cxt
from .corpus import (
    AnnotationCorpus,
    AnnotationsFormatError,
    ArticleAnnotation,
    ConventionTargets,
    CorpusError,
    FixtureConstraint,
    InfeasibleSpecError,
    MarginalSpec,
    merge_corpora,
    parse_annotations,
    reconstruct_fixture,
    write_annotations,
)
from .factors import (
    Factorization,
    OrdinalFactor,
    SupportReport,
    cross_support,
    factor_support,
    ferrers_check,
    greedy_factorize,
)
from .implications import (
    Implication,
    ImplicationError,
    ImplicationSet,
    canonical_base,
    closure,
    enumerate_closed,
    holds,
    shared_intents,
)
from .lattice import (
    ConceptLattice,
    DimensionResult,
    FormalConcept,
    LatticeError,
    build_cover_relation,
    enumerate_concepts,
    order_dimension,
    width_depth,
)
from .mapdoc import LayoutedMap, MapDocumentError, export_map, import_map, layered_layout
from .navigation import (
    AnnotatedLattice,
    ArticleInfo,
    MoveEntry,
    MoveResult,
    NavigationError,
)
from .scaling import (
    CONVENTIONS,
    MARKERS,
    ScaleError,
    apply_scale,
    is_coarser_view,
    marginals,
    polar_attribute,
    scaled_attributes,
)

__version__ = "0.1.0"

"""Invariants of colored links computed from combinatorial C-complex data."""

from .laurent import LaurentPoly, PolyMatrix, RationalForm, det
from .model import (CComplexData, Clasp, EpsMatrixFamily, SchemaError,
                    SurfacePiece, ValidationError, ValidationReport,
                    attach_handle, load_ccomplex, validate)
from .moves import (PaperBlockParams, T4Spec, congruence, paper_block_fixture,
                    t4_scale_aggregate, t4_scale_hermitian, verify_invariance)
from .potential import AggregateMatrix, aggregate, conway_potential
from .signature import (HermitianEval, SigNull, TorusPoint, hermitian_at,
                        signature_nullity, torus_grid)
from .skiplink import (LinkDiagram, SkipFixture, clasp_linking,
                       is_pairwise_unlinked, linking_number, load_skip_fixture)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "PolyMatrix", "RationalForm", "det",
    "CComplexData", "Clasp", "EpsMatrixFamily", "SchemaError", "SurfacePiece",
    "ValidationError", "ValidationReport", "attach_handle", "load_ccomplex",
    "validate",
    "PaperBlockParams", "T4Spec", "congruence", "paper_block_fixture",
    "t4_scale_aggregate", "t4_scale_hermitian", "verify_invariance",
    "AggregateMatrix", "aggregate", "conway_potential",
    "HermitianEval", "SigNull", "TorusPoint", "hermitian_at",
    "signature_nullity", "torus_grid",
    "LinkDiagram", "SkipFixture", "clasp_linking", "is_pairwise_unlinked",
    "linking_number", "load_skip_fixture",
]

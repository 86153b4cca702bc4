"""Exact workbench for finite orthosets, their orthoclosed-set lattices,
Sasaki maps and projections, and exact Hermitian spaces.

Everything is computed over exact arithmetic and every verdict carries a
witness or a replayable refutation; no result in this package depends on
floating point or on iteration order of hash containers.
"""
from .config import snapshot
from .errors import (
    AnisotropyError,
    BudgetExceededError,
    DimensionMismatchError,
    FixtureError,
    HypothesisViolation,
    InputError,
    InvalidSubsetError,
    LatticeLawError,
    MapDomainError,
    NotHermitianError,
    NotOrthoclosedError,
    NotOrthomodularError,
    NotPrincipalError,
    NotSasakiSpaceError,
    OrthokitError,
    ScalarSyntaxError,
)
from .hermitian import (
    GaussianRational,
    HermitianSpace,
    Line,
    Subspace,
    contains,
    format_scalar,
    format_vector,
    full_subspace,
    fuzz_hermitian,
    inner,
    intersect_subspaces,
    line,
    line_subspace,
    make_space,
    orthogonal_lines,
    parse_scalar,
    parse_vector,
    perp_subspace,
    project,
    sample_orthoset,
    sasaki_line,
    star,
    subspace,
    sum_subspaces,
    zero_subspace,
)
from .lattice import (
    CoveringReport,
    LatticeIso,
    OrthoLattice,
    RoundtripResult,
    WilceReport,
    atoms_and_covering,
    atoms_to_orthoset,
    build_lattice,
    check_lattice_iso,
    dacey_criterion,
    find_lattice_iso,
    is_basic,
    is_dacey,
    is_orthomodular,
    lattice_to_dot,
    oml_to_orthoset,
    orthoclosed_lattice,
    projection_facts,
    roundtrip_check,
    sasaki_projection,
    set_label,
    wilce_check,
)
from .orthoset import Orthoset, PropertyReport, Subset, Verdict, subset_key
from .sasaki import (
    FinchReport,
    RefutationTrace,
    SasakiMapWitness,
    SasakiSpaceVerdict,
    SasakiVerdict,
    ShortcutResult,
    bar_phi,
    count_sasaki_maps,
    finch_report,
    find_sasaki_map,
    is_sasaki_map,
    is_sasaki_space,
    property_report,
    sasaki_formula_check,
    sasaki_from_oml,
    shortcut_construct,
    verify_refutation,
)

__version__ = "0.1.0"

__all__ = [
    "AnisotropyError",
    "BudgetExceededError",
    "CoveringReport",
    "DimensionMismatchError",
    "FinchReport",
    "FixtureError",
    "GaussianRational",
    "HermitianSpace",
    "HypothesisViolation",
    "InputError",
    "InvalidSubsetError",
    "LatticeIso",
    "LatticeLawError",
    "Line",
    "MapDomainError",
    "NotHermitianError",
    "NotOrthoclosedError",
    "NotOrthomodularError",
    "NotPrincipalError",
    "NotSasakiSpaceError",
    "OrthoLattice",
    "OrthokitError",
    "Orthoset",
    "PropertyReport",
    "RefutationTrace",
    "RoundtripResult",
    "SasakiMapWitness",
    "SasakiSpaceVerdict",
    "SasakiVerdict",
    "ScalarSyntaxError",
    "ShortcutResult",
    "Subset",
    "Subspace",
    "Verdict",
    "WilceReport",
    "atoms_and_covering",
    "atoms_to_orthoset",
    "bar_phi",
    "build_lattice",
    "check_lattice_iso",
    "contains",
    "count_sasaki_maps",
    "dacey_criterion",
    "finch_report",
    "find_lattice_iso",
    "find_sasaki_map",
    "format_scalar",
    "format_vector",
    "full_subspace",
    "fuzz_hermitian",
    "inner",
    "intersect_subspaces",
    "is_basic",
    "is_dacey",
    "is_orthomodular",
    "is_sasaki_map",
    "is_sasaki_space",
    "lattice_to_dot",
    "line",
    "line_subspace",
    "make_space",
    "oml_to_orthoset",
    "orthoclosed_lattice",
    "orthogonal_lines",
    "parse_scalar",
    "parse_vector",
    "perp_subspace",
    "project",
    "projection_facts",
    "property_report",
    "roundtrip_check",
    "sample_orthoset",
    "sasaki_formula_check",
    "sasaki_from_oml",
    "sasaki_line",
    "sasaki_projection",
    "set_label",
    "shortcut_construct",
    "snapshot",
    "star",
    "subset_key",
    "subspace",
    "sum_subspaces",
    "verify_refutation",
    "wilce_check",
    "zero_subspace",
]

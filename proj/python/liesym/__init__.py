"""Lie point symmetries of a two-factor Kolmogorov backward equation.

Thin Python layer over the C++ engine: case classification, cataloged
generator bases, dual-route symmetry checks, exact commutator tables,
structure witnesses, and one-parameter flows.
"""

try:
    from ._liesym import *  # noqa: F401,F403  (installed package layout)
    from ._liesym import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits next to the package
    from _liesym import *  # type: ignore  # noqa: F401,F403
    from _liesym import __version__  # type: ignore  # noqa: F401

__all__ = [
    "case_ids",
    "classify",
    "case_info",
    "dimension_table",
    "basis",
    "determining_system",
    "check_field",
    "bracket_table",
    "transcription_diffs",
    "structure",
    "isomorphism_grid",
    "flow",
    "transform_value",
    "transported_residual",
    "__version__",
]

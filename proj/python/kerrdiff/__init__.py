"""Plane-wave diffraction by a Kerr-nonlinear dielectric layer."""

from ._kerrdiff import (  # noqa: F401
    PermittivityProfile,
    ProblemParams,
    apply_operator,
    check,
    incident_field,
    lemma1,
    lemma3,
    make_params,
    solve,
    solve_bvp,
    __version__,
)

__all__ = [
    "PermittivityProfile",
    "ProblemParams",
    "apply_operator",
    "check",
    "incident_field",
    "lemma1",
    "lemma3",
    "make_params",
    "solve",
    "solve_bvp",
    "__version__",
]

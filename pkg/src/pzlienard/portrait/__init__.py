"""Floating-point side: integration, transformation checks, quadrature, portraits."""

from .integrate import Termination, Trajectory, integrate
from .phase import DEFAULT_WINDOW, PortraitData, phase_portrait, seed_points
from .quadrature import DomainError, SignResolution, resolve_riccati_sign, riccati_quadrature
from .render import render
from .verify import (
    SingularMap,
    SourceSystem,
    StageCheck,
    VariableMap,
    identity_map,
    ode_as_source,
    perturbed,
    pipeline_checks,
    verify_pipeline,
    verify_transform,
)

__all__ = [
    "DEFAULT_WINDOW",
    "DomainError",
    "PortraitData",
    "SignResolution",
    "SingularMap",
    "SourceSystem",
    "StageCheck",
    "Termination",
    "Trajectory",
    "VariableMap",
    "identity_map",
    "integrate",
    "ode_as_source",
    "perturbed",
    "phase_portrait",
    "pipeline_checks",
    "render",
    "resolve_riccati_sign",
    "riccati_quadrature",
    "seed_points",
    "verify_pipeline",
    "verify_transform",
]

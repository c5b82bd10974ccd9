"""Derived invariants and constructions for gentle algebras, in exact arithmetic."""
from .quiver import (Arrow, BoundQuiver, Path, ThreadSummary, ValidationReport, compose,
                     cycles, degree, make_quiver, path_basis, threads, validate)
from .blossom import Blossoming, Orbit, ag_structure, blossom
from .invariants import (AGTable, HochschildProfile, Report, consistency_suite, hochschild_dims,
                         mobius, phi, phi_graded, phi_mobius_recover, phi_repetition,
                         phi_via_hochschild)
from .constructions import (RepetitionQuiver, apr_reflect, apr_transport,
                            check_reflection_condition, iso, iterated_weld, random_gentle,
                            repeat, sheet_basis, weld)
from .realization import (build_ut, build_va, check_conditions, cokernel_dual, eta,
                          ut_check, verify_eta)
from .qvr import ParseError, emit, parse_qvr, read_structured

__version__ = "0.1.0"


def permitted_successor(bq, arrow):
    return bq.permitted_successor(arrow)


def forbidden_successor(bq, arrow):
    return bq.forbidden_successor(arrow)

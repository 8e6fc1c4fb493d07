"""Exact computations on the curve and divisor lattices of Fano threefolds."""
from .census import (CensusKind, CensusResult, CheckResult, VerificationReport, census,
                     check_shift_theorem, verify_family)
from .cones import RationalCone, decompose, dual_cone, extreme_rays, hilbert_basis
from .enumerate import DegreeWindow, enumerate_in_cone, enumerate_lines, enumerate_nef_classes
from .errors import (DataError, DimensionError, DomainError, FamilyNotFound, FreeCurvesError,
                     PairingError, PreconditionError, StructureError)
from .familydb import (FamilyRecord, blowup_invariants, list_families, load_family,
                       parse_family, serialize, validate)
from .lattice import CurveClass, DivisorClass, IntersectionForm, anticanonical_degree, pair
from .relations import (MonoidRelation, WitnessDivisors, check_witnesses, elimination_order,
                        expand_orbits, generating_relations, oracle_relations,
                        relations_equivalent, verify_relation)

__version__ = "0.1.0"

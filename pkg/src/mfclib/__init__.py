"""Exact modular fusion category data and modular invariant machinery."""

# the catalog() dispatcher stays at mfclib.catalog.catalog so the submodule
# name is not shadowed
from .catalog import (catalog_ids, double_cyclic, fibonacci, from_id, ising,
                      pointed_cyclic, su2)
from .characters import (ChiTable, DoubleCharTable, calibrate_trivial_context,
                         conjugation_symmetry_report, cyclic_group_table,
                         integrality_diagnostic, mueger_flags,
                         trivial_double_table, vacuum_dimension_table,
                         verify_ortho1, verify_ortho2, verify_trace_formula)
from .context_fixtures import (context_from_id, context_ids, d4_context,
                               dynkin_nimreps, e6_context, trivial_context)
from .cyclotomic import (ExactScalar, conjugate, invert, normalize, rational,
                         root_of_unity, sign_of_real)
from .errors import (DegenerateData, DivisionByZero, IndexOutOfRange,
                     IntegrityError, InvalidData, MFCError, MissingBranching,
                     MissingDualFusion, MissingNimrep, MissingTables,
                     NonIntegralFusion, NotInvariant, NotReal, ParseError,
                     RankMismatch, SchemaError, SearchBudgetExceeded)
from .fusion_ring import (CenterObject, FusionRing, center_hom_dim,
                          center_tensor, full_center, unit_center_object,
                          vacuum_multiplicity)
from .invariants import (CommutantBasis, ZMatrix, commutant_basis,
                         enumerate_invariants, is_modular_invariant,
                         physical_weight)
from .modular_data import (DerivedQuantities, ModularData, ValidationReport,
                           derived, validate, verlinde_fusion)
from .morita import (MoritaContextData, exponents_check, verify_context,
                     z_from_branching)
from .obstruction import (ObstructionReport, check_obstruction, double_z,
                          lhs_multi, rhs_vacuum, series_coefficients,
                          trace_identities)
from .rational import RationalMatrix, rational_nullspace
from .serialize import decode, decode_from_path, encode, encode_to_path

__version__ = "0.1.0"

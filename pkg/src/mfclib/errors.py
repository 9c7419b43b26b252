"""Exception types shared across the package."""


class MFCError(Exception):
    """Base class for all mfclib errors."""


class DivisionByZero(MFCError, ZeroDivisionError):
    """Inversion of the zero element of a cyclotomic field."""


class NotReal(MFCError, ValueError):
    """Sign requested for an element not fixed by complex conjugation."""


class InvalidData(MFCError, ValueError):
    """Modular data failed axiom validation where validity is required."""


class NonIntegralFusion(MFCError, ArithmeticError):
    """A Verlinde coefficient is not a nonnegative rational integer."""


class DegenerateData(MFCError, ValueError):
    """Catalog parameters produce degenerate (non-modular) data."""


class IndexOutOfRange(MFCError, IndexError):
    """Object index outside the simple-object range."""


class RankMismatch(MFCError, ValueError):
    """Operands defined over different simple-object index sets."""


class SearchBudgetExceeded(MFCError, RuntimeError):
    """Enumeration aborted after exceeding the configured node budget."""


class NotInvariant(MFCError, ValueError):
    """Derived Z-matrix fails commutation with the modular data."""


class MissingNimrep(MFCError, ValueError):
    """Operation requires nimrep matrices that the context does not carry."""


class MissingDualFusion(MFCError, ValueError):
    """Operation requires the fusion ring of the dual category."""


class MissingBranching(MFCError, ValueError):
    """Operation requires branching matrices that the context does not carry."""


class MissingTables(MFCError, ValueError):
    """Operation requires character tables that were not supplied."""


class SchemaError(MFCError, ValueError):
    """Unknown schema version or file kind."""


class ParseError(MFCError, ValueError):
    """Malformed payload in a data file."""


class IntegrityError(MFCError, ValueError):
    """Well-formed payload violating a type invariant."""

"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
failures onto distinct exit statuses and JSON error objects.
"""


class EngineError(Exception):
    code = "engine"


class DimensionError(EngineError):
    """Unsupported or mismatched dimension."""

    code = "dimension"


class TruncationError(EngineError):
    """An operation needed more x-jet order than its input certifies."""

    code = "truncation"


class IntegrityError(EngineError):
    """A value that must be real (or otherwise constrained) is not."""

    code = "integrity"


class ContractError(EngineError):
    """An operation was called outside its stated contract."""

    code = "contract"


class GeometryError(EngineError):
    """Base class for bad geometry input."""

    code = "geometry"


class GeometryParseError(GeometryError):
    code = "parse"


class SymmetryConflictError(GeometryError):
    code = "symmetry-conflict"


class CurvatureIdentityError(GeometryError):
    """Pair symmetry or first-Bianchi violation in a curvature tensor."""

    code = "bianchi"

"""Exception hierarchy.

``InvalidData`` covers broken invariants on constructed objects (the CLI maps
these to exit code 1 when they surface while loading a workspace, 2 when an
operation raises them later).  ``PreconditionError`` covers operation
preconditions (exit code 2).  ``CheckFailure`` is raised by check suites when
asked to be strict (exit code 3).
"""


class MPacketsError(Exception):
    pass


class InvalidData(MPacketsError):
    pass


class InventoryError(InvalidData):
    pass


class ParameterError(InvalidData):
    pass


class CharacterError(InvalidData):
    pass


class SegmentError(InvalidData):
    pass


class OrderError(InvalidData):
    pass


class SchemaError(InvalidData):
    """Workspace text that does not match the schema."""


class PreconditionError(MPacketsError):
    pass


class MissingRootNumber(PreconditionError):
    def __init__(self, rho: str, n: int):
        super().__init__(f"no root number supplied for ({rho}, r({n}))")
        self.rho = rho
        self.n = n


class EnumerationCapExceeded(PreconditionError):
    """Order enumeration hit its state cap; no verdict is returned."""


class CheckFailure(MPacketsError):
    pass

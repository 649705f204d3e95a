"""Exception types raised by the library.

Every error carries a short machine-readable ``code`` used by the CLI
in its JSON error objects.
"""


class PTightError(Exception):
    code = "error"


class InvalidFaceGraph(PTightError):
    code = "invalid_face_graph"


class NonSimpleQuotient(PTightError):
    code = "non_simple_quotient"


class NotMoebius(PTightError):
    code = "not_moebius"


class UnknownVertex(PTightError, KeyError):
    code = "unknown_vertex"


class UnknownEdge(PTightError, KeyError):
    code = "unknown_edge"


class NotContractible(PTightError):
    code = "not_contractible"


class NotPlanarSplit(PTightError):
    code = "not_planar_split"


class NotTight(PTightError):
    code = "not_tight"


class TerminalNotInCatalog(PTightError, AssertionError):
    code = "terminal_not_in_catalog"


class TooLarge(PTightError):
    code = "too_large"


class MissingVertex(PTightError, KeyError):
    code = "missing_vertex"


class MalformedInput(PTightError, ValueError):
    code = "malformed_input"

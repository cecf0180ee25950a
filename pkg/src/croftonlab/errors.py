"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Raised when an input lies outside the domain of a geometric operation.

    ``code`` is a short machine-readable tag (``NON_CONVEX``,
    ``OUTSIDE_CHART``, ``NEAR_POLE``, ...) that the command line layer
    forwards verbatim.
    """

    def __init__(self, code, message=None):
        self.code = code
        super().__init__(message or code)

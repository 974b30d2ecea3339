"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration or input file is invalid.

    Carries the full list of violations so callers can report them all at
    once instead of stopping at the first problem.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("\n".join(self.violations))


class NumericFault(ArithmeticError):
    """A numeric stage produced values it cannot recover from.

    Raised for non-finite regression data, root finders that miss their
    residual target, and similar hard numeric failures.
    """


class EstimateNotPhysical(NumericFault):
    """Recovered polynomial roots are too far from the real axis.

    The raw roots are attached so callers can log or inspect them.
    """

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = tuple(roots)

"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InternalContradiction(RuntimeError):
    """A guaranteed-by-theory object could not be constructed.

    Raised, for instance, when a point flagged as exceptional admits no bad
    radius. This always indicates a bug, never bad input.
    """


class MultiplicityAuditError(RuntimeError):
    """A selected disk family overlaps more than the audited bound allows."""

    def __init__(self, multiplicity, bound, probe):
        self.multiplicity = multiplicity
        self.bound = bound
        self.probe = probe
        super().__init__(
            f"multiplicity {multiplicity} exceeds bound {bound} at probe {probe!r}"
        )


class ConfigError(ValueError):
    """A run configuration violates one or more constraints.

    ``problems`` is a list of ``(key_path, message)`` pairs, one per violation.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "; ".join(f"{path}: {msg}" for path, msg in self.problems)
        super().__init__(lines or "invalid configuration")

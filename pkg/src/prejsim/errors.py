class ConfigurationError(Exception):
    """A society/scenario description violates a structural invariant."""


class UsageError(Exception):
    """Bad request against a valid artifact: unknown preset, group, selector."""

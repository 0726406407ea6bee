class DesignError(ValueError):
    """Base error for invalid arguments, designs and files."""


class ParseError(DesignError):
    """A design file or subset string couldn't be read."""


class ConstructionError(DesignError):
    """A construction's preconditions failed, or its result failed verification."""


class LinearAlgebraError(DesignError):
    """Dimension mismatches and failed solver self-checks."""

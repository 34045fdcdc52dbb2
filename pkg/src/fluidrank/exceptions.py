"""Exception types raised by fluidrank."""


class GraphParseError(ValueError):
    """Malformed edge-list line."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class NodeRangeError(OverflowError):
    """Node id does not fit in the platform index type."""


class IneligibleNodeError(ValueError):
    """A diffusion was requested at a node holding no diffusible fluid."""


class NumericError(FloatingPointError):
    """Fluid or history became non-finite."""

"""Exception types raised by the simulator."""


class IrsError(Exception):
    """Base class for simulator errors."""


class DegenerateGeometryError(IrsError, ValueError):
    """Two nodes coincide, or an angle the model needs is undefined."""


class ModelValidityError(IrsError, ValueError):
    """A model is evaluated outside its stated validity range."""


class ZeroChannelError(IrsError, ValueError):
    """The channel carries no energy, so no power can be allocated."""


class ApproximationError(IrsError, ValueError):
    """A high-SNR approximation is used where it does not apply."""


class BudgetExceededError(IrsError, RuntimeError):
    """A search would need more evaluations than allowed."""


class ConfigError(IrsError, ValueError):
    """A scenario file or CLI override could not be parsed."""


class NumericError(IrsError, ValueError):
    """Non-finite values reached a numeric routine."""

"""Exception hierarchy shared by all toolkit modules."""


class SupermoduliError(Exception):
    """Base class for toolkit errors."""


class RingMismatchError(SupermoduliError):
    """Operands live in different ring contexts."""


class NotInvertibleError(SupermoduliError):
    """An element (or a Jacobian, or a group parameter) is not a unit."""


class MixedParityError(SupermoduliError):
    """A parity-homogeneous input was required."""


class ParseError(SupermoduliError):
    """Fixture text does not match the polynomial grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class WindowError(SupermoduliError):
    """A Cech window is too small, even after doubling, or did not stabilize."""


class DeformationError(SupermoduliError):
    """A gluing is not a deformation of the weighted projective superline."""


class IntegrableDistributionError(SupermoduliError):
    """The distribution of a 1-form is integrable everywhere."""


class DegenerateFormError(SupermoduliError):
    """A 1-form has no odd kernel generator on the chart."""


class UnframedError(SupermoduliError):
    """The framing coefficient x1 of a SUSY form is not a unit."""


class RamifiedDivisorError(SupermoduliError):
    """The Ramond divisor has a repeated point."""


class NotInKernelError(SupermoduliError):
    """A 1-form is not a combination of the canonical SUSY basis forms."""


class ChartCoverError(SupermoduliError):
    """An automorphism does not preserve the standard two-chart cover."""


class MobiusFixerError(SupermoduliError):
    """The Möbius maps fixing the Ramond points are not all scalar."""


class NotHomogeneousError(SupermoduliError, ValueError):
    """A binary form is not homogeneous of the required degree."""


class InvalidRamondCountError(SupermoduliError, ValueError):
    """The number of Ramond punctures must be even and at least 4."""


def check_ramond_count(n_r: int) -> int:
    """Validate a Ramond puncture count.

    Args:
        n_r: Number of Ramond punctures

    Returns:
        The validated count
    """
    if n_r < 4 or n_r % 2:
        raise InvalidRamondCountError(f"n_R must be even and >= 4, got {n_r}")
    return n_r

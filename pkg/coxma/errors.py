"""Exception hierarchy shared by the coxma modules and the command line."""


class CoxmaError(Exception):
    """Base class for every error raised by coxma."""

    exit_code = 1


class InputError(CoxmaError):
    """The caller supplied data that cannot be processed."""

    exit_code = 2


class ArrangementError(InputError):
    """Malformed arrangement or multiplicity data."""


class UnsupportedTypeError(InputError):
    """Coxeter family, rank or chart type outside the supported set."""


class NotQuasiConstantError(InputError):
    """A multiplicity whose maximum and minimum differ by more than one."""

    def __init__(self, spread: int):
        super().__init__(f"multiplicity is not quasi-constant: max - min = {spread}")
        self.spread = spread


class PolynomialParseError(InputError):
    """A polynomial string could not be parsed."""


class InternalCheckError(CoxmaError):
    """A postcondition that the mathematics guarantees has failed."""

    exit_code = 3


class NonLinearDenominatorError(InternalCheckError):
    """A denominator acquired a factor that is not an arrangement form."""


class NotHomogeneousError(InputError):
    """Derivation or form coefficients that do not share one homogeneous degree."""


class MembershipError(InputError):
    """A derivation or form handed in as a module member is not one."""

"""
Error hierarchy shared by the computation services
"""
from typing import Optional, Tuple


class BraidCalcError(Exception):
    """Base class for every computation error"""
    pass


class CartanError(BraidCalcError, ValueError):
    """Unsupported Lie type or rank, bad index, or incompatible weight"""
    pass


class DominanceError(CartanError):
    """A dominant weight was required"""

    def __init__(self, coords: Tuple[int, ...], operation: str):
        self.coords = tuple(coords)
        self.operation = operation
        super().__init__(f"{operation} requires a dominant weight, got {list(self.coords)}")


class FieldArithmeticError(BraidCalcError, ArithmeticError):
    """Exact arithmetic failure: root order mismatch, pole, square root, parse"""
    pass


class PoleAtOneError(FieldArithmeticError):
    """The element has a pole at q = 1"""

    def __init__(self, denominator: str):
        self.denominator = denominator
        super().__init__(f"pole at q = 1: denominator {denominator} vanishes there")


class ModuleFormatError(BraidCalcError):
    """A module file could not be parsed into a consistent module"""
    pass


class RelationViolationError(BraidCalcError):
    """A module fails a defining relation"""

    def __init__(self, relation: str, details: str):
        self.relation = relation
        self.details = details
        super().__init__(f"relation '{relation}' violated: {details}")


class MultiplicityError(BraidCalcError):
    """The tensor square is not multiplicity-free"""

    def __init__(self, coords: Tuple[int, ...], count: int):
        self.coords = tuple(coords)
        self.count = count
        super().__init__(
            f"weight {list(self.coords)} has {count} independent highest-weight vectors; "
            "the spectral braiding needs a multiplicity-free square"
        )


class DimensionCapError(BraidCalcError):
    """A construction would exceed the configured dimension cap"""

    def __init__(self, dimension: int, cap: int, what: str = "module"):
        self.dimension = dimension
        self.cap = cap
        super().__init__(f"{what} of dimension {dimension} exceeds the cap {cap}")


class SignDeterminationError(BraidCalcError):
    """The q = 1 limit of a highest-weight vector is not a flip eigenvector"""
    pass


class CertificationError(BraidCalcError):
    """A constructed operator failed a mandatory identity"""

    def __init__(self, identity: str, details: str, pair: Optional[Tuple[int, int]] = None):
        self.identity = identity
        self.details = details
        self.pair = pair
        where = f" for generators {pair}" if pair else ""
        super().__init__(f"certification of '{identity}' failed{where}: {details}")


class UnsupportedConfigurationError(BraidCalcError):
    """The requested instance lies outside what the pipeline supports"""
    pass


class StrandMismatchError(BraidCalcError, ValueError):
    """A braid word does not match the strand count of the representation"""
    pass


class ConsistencyError(BraidCalcError):
    """Two independent computations of the same object disagree"""
    pass

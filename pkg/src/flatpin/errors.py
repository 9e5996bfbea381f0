"""Exception hierarchy shared by all flatpin modules."""


class FlatpinError(Exception):
    pass


class NotPinElement(FlatpinError):
    pass


class NotSignedPermutation(FlatpinError):
    pass


class NotInvolution(FlatpinError):
    pass


class ConventionMismatch(FlatpinError):
    pass


class ValidationError(FlatpinError):
    """Raised by group validation; ``issues`` lists every violated condition."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class NotOrientable(FlatpinError):
    pass


class TooMany(FlatpinError):
    pass


class StructuresExist(FlatpinError):
    pass


class NotDiagonalType(FlatpinError):
    pass


class DimensionMismatch(FlatpinError):
    pass


class UnknownName(FlatpinError):
    pass


class BudgetExceeded(FlatpinError):
    pass


class GroupFileError(FlatpinError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

# grouplab/utils/errors.py


class GroupLabError(Exception):
    """Base class for every domain error raised by grouplab."""


class InvalidTableError(GroupLabError):
    pass


class InvalidGroupSpecError(GroupLabError):
    pass


class NotNormalError(GroupLabError):
    pass


class BoundExceededError(GroupLabError):
    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: {size} exceeds bound {bound}")
        self.what = what
        self.size = size
        self.bound = bound


class ParentMismatchError(GroupLabError):
    pass


class NotInvariantError(GroupLabError):
    pass


class NotInKernelError(GroupLabError):
    pass


class IncompatiblePairError(GroupLabError):
    pass


class TrivialOrientationError(GroupLabError):
    pass


class AbelianGroupError(GroupLabError):
    pass


class PNotSubgroupError(GroupLabError):
    def __init__(self, p: int, elements):
        super().__init__(f"the {p}-elements do not form a subgroup")
        self.p = p
        self.elements = sorted(elements)


class ContextMismatchError(GroupLabError):
    pass


class NotAUnitError(GroupLabError):
    pass


class InvalidPrimeError(GroupLabError):
    pass


class InvalidWordError(GroupLabError):
    pass


class InvalidSelectorError(GroupLabError):
    pass

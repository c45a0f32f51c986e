class ToolkitError(Exception):
    pass


class InputError(ToolkitError):
    pass


class PreconditionError(InputError):
    def __init__(self, message: str, value: object = None) -> None:
        InputError.__init__(self, message)

        self.value = value


class NonCoprimeModuli(InputError):
    def __init__(self, first: int, second: int) -> None:
        InputError.__init__(
            self, 'moduli {} and {} are not coprime'.format(first, second)
        )

        self.pair = (first, second)


class WorkBudgetExceeded(ToolkitError):
    def __init__(self, what: str, value: int, budget: int) -> None:
        ToolkitError.__init__(
            self, '{} of {} exceeded the work budget of {}'.format(what, value, budget)
        )

        self.value = value
        self.budget = budget


class SieveBudgetExceeded(ToolkitError):
    def __init__(self, bound: int, limit: int) -> None:
        ToolkitError.__init__(
            self, 'sieve bound {} is above the limit {}'.format(bound, limit)
        )

        self.bound = bound
        self.limit = limit


class SearchBoundTooSmall(ToolkitError):
    """`best` is the narrowest width of the largest admissible partial tuple, of `size` offsets."""

    def __init__(self, message: str, best: int, size: int) -> None:
        ToolkitError.__init__(self, message)

        self.best = best
        self.size = size


class VerificationDefect(ToolkitError):
    """
    A construction failed its own post-condition. This is a bug in
    the toolkit, never a property of the input.
    """

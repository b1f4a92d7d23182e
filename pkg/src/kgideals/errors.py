"""Exception hierarchy shared by the library and the command line."""


class KGIdealsError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class InputError(KGIdealsError):
    """Malformed or unresolvable input (unknown ids, bad colors, bad documents)."""


class CompositionError(InputError):
    """Edges or paths that cannot be composed."""


class PreconditionError(KGIdealsError):
    """An operation was called outside its documented domain."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapacityError(KGIdealsError):
    exit_code = 3

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class InconclusiveError(KGIdealsError):
    """An oracle could not decide within the box it was given."""

    exit_code = 4

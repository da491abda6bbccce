"""Exception types shared across the toolkit."""


class CyclewrightError(Exception):
    """Base class for all toolkit errors."""


class PreconditionError(CyclewrightError):
    """An operation was called on an input violating its stated precondition."""


class NoOutGeneratorError(PreconditionError):
    """The requested root does not reach every vertex (or no vertex does)."""


class BudgetExceededError(CyclewrightError):
    """A search exhausted its node or time budget before finishing."""


class ImproperInputError(CyclewrightError):
    """A coloring handed to a combinator is not proper on its arc set."""


class DomainMismatchError(CyclewrightError):
    """A coloring or witness refers to vertices outside the host digraph."""


class DegenerateError(CyclewrightError):
    """Iterated peeling emptied the graph; the density precondition was hollow."""


class InfeasibleParametersError(CyclewrightError):
    """Construction parameters outside the supported (documented) range."""


class LemmaViolationError(CyclewrightError):
    """A published formula or bound failed on a concrete instance.

    Carries the offending instance so it can be reproduced; callers must
    surface this as a diagnostic, never swallow it as success.
    """

    def __init__(self, tag: str, detail: str, instance=None):
        super().__init__(f"{tag}: {detail}")
        self.tag = tag
        self.detail = detail
        self.instance = instance

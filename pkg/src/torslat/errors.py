"""Exception classes; each maps to a distinct CLI exit status."""


class TorslatError(Exception):
    exit_code = 1


class InputError(TorslatError):
    """Malformed input or a violated precondition."""

    exit_code = 1


class CompletenessError(InputError):
    """A construction produced a module outside the trusted ground set."""

    def __init__(self, detail: str = ""):
        msg = "ground set is not closed under the requested construction"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class ResourceError(TorslatError):
    """A configured enumeration cap was exceeded."""

    exit_code = 2


class TheoremViolation(TorslatError):
    """A structural statement failed on concrete data.

    ``statement`` is a short machine-readable key such as
    ``"cover-label-uniqueness"``.
    """

    exit_code = 3

    def __init__(self, statement: str, detail: str):
        super().__init__(f"[{statement}] {detail}")
        self.statement = statement
        self.detail = detail

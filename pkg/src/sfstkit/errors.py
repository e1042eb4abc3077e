"""Exception types shared across the toolkit."""


class SfstError(Exception):
    """Base class for all toolkit errors."""


class AlphabetError(SfstError):
    """An input token is outside the machine's declared input alphabet.

    Distinct from the in-language "undefined" result, which is returned as
    ``None`` by the transduction operations.
    """


class PathError(SfstError):
    """A path-level operation was asked about an undefined path."""


class NotTrimError(SfstError):
    """The machine violates a trimness precondition (accessible + co-accessible)."""


class ParseError(SfstError):
    """A text file does not conform to one of the serialized formats."""


class ConsistencyError(SfstError):
    """Data contradicts the machine (or itself): bad pair, duplicate input, etc."""


class SplitError(SfstError):
    """A dataset split would be degenerate (one side empty) or is ill-specified."""


class GenerationError(SfstError):
    """Rejection sampling exhausted its budget without a trim machine."""

    def __init__(self, attempts):
        super().__init__(f"no accessible+co-accessible machine in {attempts} attempts")
        self.attempts = attempts


class ExhaustionError(SfstError):
    """A random-walk sampler ran out of attempts before reaching its target."""

    def __init__(self, collected, target, attempts):
        super().__init__(
            f"collected {collected}/{target} unique pairs in {attempts} walks"
        )
        self.collected = collected
        self.target = target
        self.attempts = attempts

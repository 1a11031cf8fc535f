"""Exception taxonomy.

Desk-scale limits (bounded searches, truncated enumerations, capped set
algebra) are reported through dedicated exception types so callers can tell
"the answer does not exist below this bound" apart from bad input.
"""


class ErgodeskError(Exception):
    """Base class for all package errors."""


class MalformedElementError(ErgodeskError):
    """A value is not a valid element code for the active group."""


class RadiusCapExceededError(ErgodeskError):
    """Word-norm BFS reached its radius cap without finding the element."""

    def __init__(self, code, cap):
        super().__init__(f"element {code} not reachable within BFS radius {cap}")
        self.code = code
        self.cap = cap


class SearchExhaustedError(ErgodeskError):
    """No witness was found below the configured canonical-index cap."""

    def __init__(self, n, index_cap):
        super().__init__(
            f"no Foelner set with defect <= 1/{n} found at canonical index <= {index_cap}"
        )
        self.n = n
        self.index_cap = index_cap


class HorizonExceededError(ErgodeskError):
    """A scan over candidate integers ran past its configured horizon."""

    def __init__(self, what, horizon):
        super().__init__(f"{what}: no hit within scan horizon {horizon}")
        self.what = what
        self.horizon = horizon


class ComplexityLimitError(ErgodeskError):
    """Exact set algebra would exceed the configured size budget."""

    def __init__(self, what, limit, stats=None):
        super().__init__(f"{what}: exceeds complexity limit {limit}")
        self.what = what
        self.limit = limit
        self.stats = stats or {}


class EnumerationTooShortError(ErgodeskError):
    """An enumerator was exhausted before reaching the required threshold."""


class ConfigError(ErgodeskError):
    """Invalid experiment configuration."""

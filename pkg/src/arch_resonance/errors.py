"""Exception types shared across the package."""


class MissingPreset(LookupError):
    """A chirality class has no entry in the presets table."""


class InvalidPreset(ValueError):
    """A presets entry is incomplete or has a non-positive value."""


class OutOfRange(ValueError):
    """Crack depth ratio outside the admissible interval [0, 1)."""


class InvalidModel(ValueError):
    """Compliance model is unknown or violates the nonnegativity contract."""


class DegenerateSegment(ValueError):
    """Crack placed so close to a support that one segment vanishes."""


class NoRootsInRange(RuntimeError):
    """The determinant scan found neither a sign change nor a dip candidate."""


class InvalidSpec(ValueError):
    """A sweep or validation request is internally inconsistent."""


class UsageError(Exception):
    """Command line invocation error; maps to exit code 2."""

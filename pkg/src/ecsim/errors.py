"""Exception types shared across the package."""


class ModeMismatchError(ValueError):
    """Two multimode objects with incompatible mode counts were combined."""


class DegenerateBasisError(ValueError):
    """The logical qubit basis is numerically degenerate (t*alpha too small)."""


class CutoffError(ValueError):
    """A Fock-space cutoff is too small for the requested truncation tolerance."""


class SpanError(ValueError):
    """A coherent amplitude lies outside the logical span {+a, -a}."""

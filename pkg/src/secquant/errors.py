"""Exception types shared across the library."""


class SingularPointError(ValueError):
    """Operating point sits on the zero-divergence diagonal where the
    constraint-boundary calculus degenerates."""


class UnimodalityError(RuntimeError):
    """An objective assumed quasi-concave failed the pre-scan; search
    results would be unreliable, so the solver refuses to continue."""


class ArtifactError(RuntimeError):
    """A stored artifact file is missing, unreadable, or malformed."""

"""Exception hierarchy shared by the whole package."""


class DomainError(ValueError):
    """Input data does not describe a valid toric domain or instance."""


class GeometryError(DomainError):
    """A geometric predicate failed (non-convexity, bad orientation, ...)."""


class LimitError(RuntimeError):
    """A configured resource bound (node count, search box) was exceeded."""

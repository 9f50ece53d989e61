class ResourceExceeded(RuntimeError):
    """A memo, node, size or time budget ran out before an exact answer."""

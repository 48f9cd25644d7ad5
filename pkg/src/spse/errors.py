class InputError(ValueError):
    """Malformed or out-of-contract input (bad file, bad flag, bad graph data)."""


class ResourceLimitError(RuntimeError):
    """Work refused because it exceeds a size cap or enumeration budget."""

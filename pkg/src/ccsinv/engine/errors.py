"""Errors shared by the evaluation kernels and the tracer."""


class EngineError(Exception):
    """Base class for evaluation errors (not search failures)."""


class UnknownSymbolError(EngineError):
    def __init__(self, name: str):
        super().__init__(f"unknown function symbol {name}")
        self.name = name


class InstantiationFault(EngineError):
    """A condition argument or rule result had an unbound variable.

    Running such a rule would need narrowing, which this engine does not do.
    """

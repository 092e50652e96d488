class InvariantBreach(RuntimeError):
    """An internal guarantee failed. Always a bug, never a property of the input."""


class Infeasible(Exception):
    """The sampling algorithm cannot proceed for this k (no graph is built).

    ``stage`` is one of ``negative-cap``, ``stub-imbalance``,
    ``prefix-violation`` or ``negative-delta``; ``witness`` holds the
    numbers that show why.
    """

    def __init__(self, stage: str, message: str, witness: dict | None = None):
        super().__init__(message)
        self.stage = stage
        self.witness = witness or {}

    def to_dict(self) -> dict:
        return {"stage": self.stage, "message": str(self), "witness": self.witness}

"""Failure taxonomy shared across the package.

Two kinds of failure are kept strictly apart:

* ``HardFault`` marks states that the underlying combinatorial arguments
  prove impossible.  Reaching one means the implementation is wrong, so
  it is never caught and converted into a result.
* ``HypothesisFailure`` marks a lemma hypothesis that does not hold on
  the given (desk-scale) instance.  These are expected outcomes for
  relaxed parameters and are reported, never papered over.
"""


class HardFault(RuntimeError):
    """An invariant the proofs guarantee was violated: implementation bug."""


class HypothesisFailure(Exception):
    """A runtime check of a lemma hypothesis failed on this instance.

    ``kind`` is a short machine-readable tag (e.g. ``"cluster-ramsey"``,
    ``"pigeonhole"``, ``"connector-present"``), ``details`` carries the
    offending objects.
    """

    def __init__(self, kind: str, message: str, **details):
        super().__init__(message)
        self.kind = kind
        self.details = details

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"HypothesisFailure(kind={self.kind!r}, {dict(self.details)!r})"

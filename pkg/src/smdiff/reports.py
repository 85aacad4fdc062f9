"""Report record types emitted by verification checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one named verification check.

    status is "pass" only when every sub-assertion was certified; enclosures
    straddling zero are reported as "indeterminate", never as refutations.
    witnesses hold the complete surviving candidate tuples of enumeration
    checks, as tuples of discriminant values.
    """

    check_id: str
    status: str  # "pass" | "fail" | "indeterminate"
    candidate_count: int = 0
    witnesses: list[tuple[int, ...]] = field(default_factory=list)
    precision_bits: int = 0
    elapsed_ms: int = 0

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "candidate_count": self.candidate_count,
            "witnesses": [list(w) for w in self.witnesses],
            "precision_bits": self.precision_bits,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class Verdict:
    """Certified outcome of a single refutation.

    refuted is True only when the enclosure of the tested expression excludes
    zero; margin is then a certified lower bound for its absolute value.  An
    identically zero expression can only ever be inconclusive.
    """

    refuted: bool
    margin: float = 0.0
    precision_bits: int = 0

    @property
    def inconclusive(self) -> bool:
        return not self.refuted

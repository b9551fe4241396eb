"""Certificate records.  Checking them lives in :mod:`wellbalanced.verify`."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .rootsys import DynkinLabel

KINDS = (
    "Witness",
    "CoordinateParity",
    "PairCountParity",
    "E7PairScan",
    "SOSizeBound",
    "LatticeObstruction",
    "ExhaustiveSearch",
    "TrivialBound",
)


@dataclass(frozen=True)
class Certificate:
    """A re-checkable claim about a root system.

    ``value`` is the bound (or cocardinality) the certificate establishes,
    ``None`` for certificates that only refute a single subset.  ``verified``
    stays ``None`` until :func:`wellbalanced.verify.verify` stamps it.
    """

    kind: str
    label: DynkinLabel
    value: int | None
    payload: dict = field(default_factory=dict)
    verified: bool | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    def stamped(self, ok: bool) -> "Certificate":
        return replace(self, verified=ok)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "system": {"family": self.label.family, "rank": self.label.rank},
            "value": self.value,
            "payload": self.payload,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        sysd = doc["system"]
        # round-trip through json so tuples and lists compare equal
        payload = json.loads(json.dumps(doc.get("payload", {})))
        return cls(
            kind=doc["kind"],
            label=DynkinLabel(sysd["family"], sysd["rank"]),
            value=doc.get("value"),
            payload=payload,
            verified=doc.get("verified"),
        )

"""Structured outcomes of identity checks.

One report covers one identity at one parameter point.  The status is
either the string "exact" (reduced-form equality), an object
{"padic_agreement": v, "precision": K} when the two sides cannot be
told apart at working precision v >= (their joint absolute precision),
or {"fail": witness} with enough of both sides to reproduce the
mismatch.  Timing lives in elapsed_ms and is excluded from any
determinism comparison.
"""

import json
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    variant: str
    params: dict
    status: object
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        if self.status == "exact":
            return True
        return isinstance(self.status, dict) and "padic_agreement" in self.status

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "variant": self.variant,
            "params": self.params,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
        }

    def comparison_payload(self) -> dict:
        """The deterministic part of the report."""
        out = self.to_json()
        del out["elapsed_ms"]
        return out

    def json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def timed_report(identity: str, variant: str, params: dict, compute_status) -> IdentityReport:
    """Run compute_status() and package the result with wall time."""
    t0 = time.perf_counter()
    status = compute_status()
    ms = int((time.perf_counter() - t0) * 1000)
    return IdentityReport(identity, variant, dict(params), status, ms)

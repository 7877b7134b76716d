"""Verification reports shared by all modules and the command line."""

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
SHADOW = "CONJECTURE-SHADOW"


@dataclass
class Report:
    check: str
    status: str
    witness: object = None
    details: dict = field(default_factory=dict)
    parts: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status in (PASS, SHADOW)

    def __bool__(self):
        return self.ok

    def to_json(self):
        out = {"check": self.check, "status": self.status}
        if self.details:
            out["details"] = self.details
        if self.witness is not None:
            out["witness"] = self.witness
        if self.parts:
            out["parts"] = [r.to_json() for r in self.parts]
        return out

    def walk(self):
        """This report and all nested parts, depth first."""
        yield self
        for r in self.parts:
            yield from r.walk()


def combine(check, reports, **details):
    """Logical conjunction; the first failing sub-report supplies the witness."""
    reports = list(reports)
    for r in reports:
        if r.status == FAIL:
            return Report(check, FAIL, {"failed": r.check, "witness": r.witness}, details,
                          reports)
    for r in reports:
        if r.status == INCONCLUSIVE:
            return Report(check, INCONCLUSIVE, {"inconclusive": r.check, "witness": r.witness},
                          details, reports)
    return Report(check, PASS, None, details, reports)

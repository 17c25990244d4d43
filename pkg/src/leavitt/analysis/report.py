"""Per-instance verification records and their text and JSON-lines renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "unknown", "skip")


@dataclass(frozen=True)
class Instance:
    suite: str
    instance: str
    status: str
    witness: str = ""

    def record(self) -> dict:
        return {"suite": self.suite, "instance": self.instance, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    name: str
    instances: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, instance: str, status: str, witness: str = ""):
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        self.instances.append(Instance(self.name, instance, status, witness))

    def extend(self, other: "Report"):
        self.instances.extend(other.instances)
        self.notes.extend(other.notes)

    def counts(self) -> dict:
        out = dict.fromkeys(STATUSES, 0)
        for i in self.instances:
            out[i.status] += 1
        return out

    @property
    def ok(self) -> bool:
        c = self.counts()
        return c["fail"] == 0 and c["unknown"] == 0

    def failures(self) -> list:
        return [i for i in self.instances if i.status in ("fail", "unknown")]

    def sorted_instances(self):
        return sorted(self.instances, key=lambda i: (i.suite, i.instance))

    def to_text(self) -> str:
        c = self.counts()
        lines = [f"{self.name}: {c['pass']} pass, {c['fail']} fail, {c['unknown']} unknown, {c['skip']} skip"]
        for i in self.sorted_instances():
            if i.status != "pass":
                lines.append(f"  {i.status} {i.suite} {i.instance}" + (f": {i.witness}" if i.witness else ""))
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        return "".join(json.dumps(i.record(), sort_keys=True) + "\n" for i in self.sorted_instances())

    def __str__(self):
        return self.to_text()

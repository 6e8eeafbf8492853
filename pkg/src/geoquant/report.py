"""Pass/fail reports with witnesses, shared by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SCHEMA = "geoquant.report/1"


@dataclass
class Item:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    items: list[Item] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None, detail: str = "") -> Item:
        item = Item(name, bool(passed), witness, detail)
        self.items.append(item)
        return item

    def extend(self, other: "Report", prefix: str = "") -> None:
        for it in other.items:
            self.items.append(Item(prefix + it.name, it.passed, it.witness, it.detail))

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Item]:
        return [it for it in self.items if not it.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "title": self.title,
            "verdict": "pass" if self.passed else "fail",
            "items": [it.to_dict() for it in self.items],
        }

    def format(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for it in self.items:
            mark = "ok  " if it.passed else "FAIL"
            line = f"  [{mark}] {it.name}"
            if it.detail:
                line += f" - {it.detail}"
            lines.append(line)
            if not it.passed and it.witness is not None:
                lines.append(f"         witness: {it.witness}")
        return "\n".join(lines)

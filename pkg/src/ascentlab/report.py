"""Pass/fail check reports shared by the verification oracles and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckLine:
    label: str
    ok: bool
    detail: str

    def render(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.label}: {self.detail}"


@dataclass
class Report:
    title: str
    checks: list[CheckLine] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, label: str, ok: bool, detail: str) -> None:
        self.checks.append(CheckLine(label, ok, detail))

    def extend(self, other: "Report") -> None:
        for c in other.checks:
            self.checks.append(CheckLine(f"{other.title}: {c.label}", c.ok, c.detail))

    def lines(self) -> list[str]:
        out = [f"== {self.title} =="]
        out.extend(c.render() for c in self.checks)
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return out

    def to_obj(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"label": c.label, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }

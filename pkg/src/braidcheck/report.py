"""Per-identity residual records and their text/JSON renderings."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .multiop import MultiOp, residual


@dataclass(frozen=True)
class CheckItem:
    """One verified identity: residual against a tolerance plus verdict."""

    id: str
    ref: str
    residual: float
    tol: float
    ok: bool
    note: str = ""


def make_item(item_id: str, ref: str, lhs: MultiOp, rhs: MultiOp, tol: float,
              note: str = "") -> CheckItem:
    r = residual(lhs, rhs)
    return CheckItem(item_id, ref, r, tol, r <= tol, note)


def failed_item(item_id: str, ref: str, tol: float, note: str) -> CheckItem:
    return CheckItem(item_id, ref, math.inf, tol, False, note)


def _id_key(item_id: str):
    # numeric chunks compare numerically so "2.9" sorts before "2.10"
    return tuple(
        (0, int(tok)) if tok.isdigit() else (1, tok)
        for tok in re.split(r"(\d+)", item_id)
        if tok
    )


def round3(x: float) -> float | None:
    """Residual rounded to three significant digits; None when not finite."""
    if not math.isfinite(x):
        return None
    return float(f"{x:.2e}")


def fmt3(x: float) -> str:
    if not math.isfinite(x):
        return "inf"
    return f"{x:.2e}"


@dataclass(frozen=True)
class CheckReport:
    """A stable-ordered collection of check items; overall = all pass."""

    items: tuple[CheckItem, ...]

    def __post_init__(self):
        items = tuple(sorted(self.items, key=lambda it: _id_key(it.id)))
        ids = [it.id for it in items]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate item ids in report: {dup}")
        object.__setattr__(self, "items", items)

    @property
    def overall(self) -> bool:
        return all(it.ok for it in self.items)

    def item(self, item_id: str) -> CheckItem:
        for it in self.items:
            if it.id == item_id:
                return it
        raise KeyError(f"no item {item_id!r} in report")

    def failing(self) -> list[str]:
        return [it.id for it in self.items if not it.ok]

    def to_json_obj(self) -> dict:
        return {
            "overall": self.overall,
            "items": [
                {
                    "id": it.id,
                    "ref": it.ref,
                    "residual": round3(it.residual),
                    "tol": it.tol,
                    "pass": it.ok,
                    "note": it.note,
                }
                for it in self.items
            ],
        }

    def to_text(self) -> str:
        lines = []
        for it in self.items:
            status = "PASS" if it.ok else "FAIL"
            line = (
                f"{status} {it.id:<12} residual={fmt3(it.residual):>9} "
                f"tol={fmt3(it.tol):>7}  {it.ref}"
            )
            if it.note:
                line += f"  [{it.note}]"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)


def merge(*item_groups) -> CheckReport:
    items: list[CheckItem] = []
    for group in item_groups:
        if isinstance(group, CheckReport):
            items.extend(group.items)
        else:
            items.extend(group)
    return CheckReport(tuple(items))

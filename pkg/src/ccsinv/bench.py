"""Counter benchmark: hand-written vs generated partial inverse of ack.

Evaluates the bundled ``ack_2`` fixture and the partial inverse of
``ack`` produced in-process (direction I={1}, O={1}) over a fixed grid
of 21 input pairs, reporting rewrite steps, function calls, and the
step/call speed-up ratios.  Counters are exact and platform-independent;
wall-clock time depends only on the kernel, which the ``--kernel both``
mode compares.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .corpus import load
from .engine import Query, evaluate, kernel_name, unary
from .inversion import InversionTask, invert_system

#: input pairs (first argument, result) per grid row
INPUT_ROWS: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8)),
    2: ((2, 3), (2, 5), (2, 7), (2, 9), (2, 11), (2, 13), (2, 15)),
    3: ((3, 5), (3, 13), (3, 29), (3, 61), (3, 125), (3, 253), (3, 509)),
}

BASELINE = "ack_2"
CANDIDATE = "ack{1}{1}"


@dataclass
class BenchCell:
    x: int
    y: int
    base_steps: int
    base_calls: int
    inv_steps: int
    inv_calls: int
    seconds: float

    @property
    def speedup_steps(self) -> float:
        return self.base_steps / self.inv_steps

    @property
    def speedup_calls(self) -> float:
        return self.base_calls / self.inv_calls

    def to_dict(self) -> dict:
        return {
            "input": [self.x, self.y],
            BASELINE: {"rewrite_steps": self.base_steps, "function_calls": self.base_calls},
            CANDIDATE: {"rewrite_steps": self.inv_steps, "function_calls": self.inv_calls},
            "speedup_steps": round(self.speedup_steps, 2),
            "speedup_calls": round(self.speedup_calls, 2),
            "seconds": round(self.seconds, 3),
        }


def candidate_system():
    """The partial inverse of ack produced by the inverter, not a fixture."""
    ack = load("ack")
    task = InversionTask.of(ack, "ack", [1], [1], "partial")
    return invert_system(ack, task).produced


def run(rows: tuple[int, ...] = (1, 2, 3), kernel: str | None = None) -> list[BenchCell]:
    baseline = load(BASELINE)
    candidate = candidate_system()
    cells: list[BenchCell] = []
    for row in rows:
        for x, y in INPUT_ROWS[row]:
            args = (unary(x), unary(y))
            t0 = time.perf_counter()
            base = evaluate(baseline, Query(BASELINE, args), kernel=kernel)
            inv = evaluate(candidate, Query(CANDIDATE, args), kernel=kernel)
            took = time.perf_counter() - t0
            cells.append(BenchCell(
                x, y,
                base.stats.rewrite_steps, base.stats.function_calls,
                inv.stats.rewrite_steps, inv.stats.function_calls,
                took,
            ))
    return cells


def render(cells: list[BenchCell]) -> str:
    head = (f"{'input':>10}  {BASELINE + ' steps':>14} {'calls':>9}  "
            f"{CANDIDATE + ' steps':>17} {'calls':>9}  {'up steps':>9} {'up calls':>9}")
    lines = [head, "-" * len(head)]
    for c in cells:
        lines.append(
            f"{f'({c.x}, {c.y})':>10}  {c.base_steps:>14} {c.base_calls:>9}  "
            f"{c.inv_steps:>17} {c.inv_calls:>9}  "
            f"{c.speedup_steps:>9.2f} {c.speedup_calls:>9.2f}"
        )
    return "\n".join(lines)


def report(cells: list[BenchCell], kernel: str | None = None) -> dict:
    return {
        "baseline": BASELINE,
        "candidate": CANDIDATE,
        "kernel": kernel or kernel_name(),
        "rows": [c.to_dict() for c in cells],
        "table": render(cells),
    }


def compare_kernels(rows: tuple[int, ...] = (1, 2, 3)) -> dict:
    """Run the grid on every available kernel and compare.

    Counters must agree bit-for-bit; timings show what the compiled
    kernel buys.
    """
    from .engine import available_kernels

    out: dict = {"rows": list(rows), "kernels": {}}
    counters = {}
    for kern in available_kernels():
        t0 = time.perf_counter()
        cells = run(rows, kernel=kern)
        took = time.perf_counter() - t0
        out["kernels"][kern] = {"seconds": round(took, 3)}
        counters[kern] = [
            (c.base_steps, c.base_calls, c.inv_steps, c.inv_calls) for c in cells
        ]
    values = list(counters.values())
    out["counters_agree"] = all(v == values[0] for v in values[1:])
    return out

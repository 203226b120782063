"""Syntactic paradigm analysis of systems.

Every property is a syntactic sufficient condition and is reported
yes/no with witnesses for each "no".  In particular ``functional`` and
``reversible`` are syntax-level guarantees (semantic functionality is
undecidable), and termination is deliberately not a row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .inversion import full_inverse
from .terms import (
    System,
    Term,
    iter_vars_in_order,
    rename_apart,
    unify_tuples,
    vars_of_all,
)

PROPERTIES = (
    "left-linear",
    "right-linear",
    "non-erasing",
    "non-overlapping",
    "deterministic-conditions",
    "EV-free",
    "functional",
    "reversible",
)


@dataclass(frozen=True)
class Witness:
    rules: tuple[int, ...]  # 1-based rule indices
    detail: str

    def to_dict(self) -> dict:
        return {"rules": list(self.rules), "detail": self.detail}


@dataclass
class PropertyReport:
    values: dict[str, bool]
    witnesses: dict[str, list[Witness]] = field(default_factory=dict)

    def __getitem__(self, prop: str) -> bool:
        return self.values[prop]

    def to_dict(self) -> dict:
        out: dict = {}
        for prop in PROPERTIES:
            entry: dict = {"value": "yes" if self.values[prop] else "no"}
            if self.witnesses.get(prop):
                entry["witnesses"] = [w.to_dict() for w in self.witnesses[prop]]
            out[prop] = entry
        return out


@dataclass
class ComparisonTable:
    rows: tuple[str, ...]
    columns: list[tuple[str, PropertyReport]]

    def to_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "columns": {label: rep.to_dict() for label, rep in self.columns},
        }

    def render(self) -> str:
        labels = [label for label, _ in self.columns]
        width = max(len(p) for p in self.rows) + 2
        cols = [max(len(l), 3) + 2 for l in labels]
        lines = ["".ljust(width) + "".join(l.ljust(w) for l, w in zip(labels, cols))]
        for prop in self.rows:
            cells = [
                ("yes" if rep.values[prop] else "no").ljust(w)
                for (_, rep), w in zip(self.columns, cols)
            ]
            lines.append(prop.ljust(width) + "".join(cells))
        return "\n".join(line.rstrip() for line in lines)


def _repeated_var(terms: tuple[Term, ...]) -> str | None:
    seen: set[str] = set()
    for name in iter_vars_in_order(terms):
        if name in seen:
            return name
        seen.add(name)
    return None


def analyze(system: System) -> PropertyReport:
    """Property report for one system."""
    return _analyze(system, with_reversible=True)


def _analyze(system: System, with_reversible: bool) -> PropertyReport:
    values: dict[str, bool] = {}
    witnesses: dict[str, list[Witness]] = {p: [] for p in PROPERTIES}

    for i, rule in enumerate(system.rules, start=1):
        v = _repeated_var(rule.params)
        if v is not None:
            witnesses["left-linear"].append(
                Witness((i,), f"variable {v} repeats in the left-hand side of rule {i}"))
        v = _repeated_var(rule.results)
        if v is not None:
            witnesses["right-linear"].append(
                Witness((i,), f"variable {v} repeats in the results of rule {i}"))

        head_vars = vars_of_all(rule.params)
        body_vars = vars_of_all(rule.results) | {
            v for c in rule.conditions for v in vars_of_all(c.args + c.results)
        }
        erased = head_vars - body_vars
        for v in sorted(erased):
            witnesses["non-erasing"].append(
                Witness((i,), f"variable {v} of rule {i} is never used"))

        # deterministic conditions: left-to-right groundness of arguments
        known = set(head_vars)
        det_ok = True
        for j, c in enumerate(rule.conditions, start=1):
            missing = vars_of_all(c.args) - known
            if missing:
                det_ok = False
                witnesses["deterministic-conditions"].append(
                    Witness((i,), f"rule {i}, condition {j}: argument variables "
                                  f"{', '.join(sorted(missing))} not determined yet"))
            known |= vars_of_all(c.results)
        missing = vars_of_all(rule.results) - known
        if missing:
            det_ok = False
            witnesses["deterministic-conditions"].append(
                Witness((i,), f"rule {i}: result variables "
                              f"{', '.join(sorted(missing))} not determined"))

        extra = body_vars - head_vars
        for v in sorted(extra):
            witnesses["EV-free"].append(
                Witness((i,), f"variable {v} of rule {i} is not bound by the left-hand side"))

    # root overlaps between rules of the same symbol
    for sym in system.defined_symbols():
        indexed = [(i, r) for i, r in enumerate(system.rules, start=1) if r.fn == sym.name]
        for a in range(len(indexed)):
            for b in range(a + 1, len(indexed)):
                ia, ra = indexed[a]
                ib, rb = indexed[b]
                rb2 = rename_apart(rb, vars_of_all(ra.params))
                if unify_tuples(ra.params, rb2.params) is not None:
                    witnesses["non-overlapping"].append(
                        Witness((ia, ib),
                                f"rules {ia} and {ib} of {sym.name} have unifiable left-hand sides"))

    for prop in ("left-linear", "right-linear", "non-erasing",
                 "non-overlapping", "deterministic-conditions", "EV-free"):
        values[prop] = not witnesses[prop]

    values["functional"] = values["non-overlapping"] and values["deterministic-conditions"]
    if not values["functional"]:
        witnesses["functional"] = (witnesses["non-overlapping"]
                                   + witnesses["deterministic-conditions"])

    if with_reversible:
        inv = _analyze(full_inverse(system), with_reversible=False)
        values["reversible"] = values["functional"] and inv.values["functional"]
        if values["functional"] and not values["reversible"]:
            witnesses["reversible"] = [
                Witness(w.rules, f"in the full inverse: {w.detail}")
                for w in inv.witnesses["functional"]
            ]
        elif not values["functional"]:
            witnesses["reversible"] = witnesses["functional"]
    else:
        values["reversible"] = values["functional"]

    return PropertyReport(values, {p: ws for p, ws in witnesses.items() if ws})


def compare(labeled: list[tuple[str, System]]) -> ComparisonTable:
    """Side-by-side table of property reports, one column per system."""
    if not labeled:
        raise ValueError("compare needs at least one labeled system")
    return ComparisonTable(PROPERTIES, [(label, analyze(sys)) for label, sys in labeled])

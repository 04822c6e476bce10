#!/usr/bin/env python3
"""Solves an exported LP file with an external MILP solver (scipy's HiGHS).

Usage: lp_external_check.py <nfsm executable> <instance file> [expected total-count optimum]

Exports the total-count model of the instance, solves it with
scipy.optimize.milp and compares the optimum with the embedded solver's.
Exits 77 (skipped) when scipy's milp is unavailable.
"""

import re
import subprocess
import sys
import tempfile
from pathlib import Path

try:
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    print("scipy.optimize.milp not available; skipping")
    sys.exit(77)

TERM = re.compile(r"([+-]?)\s*(\d+)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_terms(text):
    terms = []
    for sign, coef, name in TERM.findall(text):
        value = int(coef) if coef else 1
        terms.append((-value if sign == "-" else value, name))
    return terms


def parse_lp(text):
    """Reads the subset of CPLEX LP that the exporter writes."""
    section = None
    objective = ""
    rows = []
    bounds = {}
    integer = set()
    names = []

    def declare(name):
        if name not in bounds:
            bounds[name] = (0, None)
            names.append(name)

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if line in ("Minimize", "Subject To", "Bounds", "Binaries", "Generals", "End"):
            section = line
            continue
        if section == "Minimize":
            objective += " " + line.split(":", 1)[-1]
        elif section == "Subject To":
            _, body = line.split(":", 1)
            m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+)\s*$", body)
            if not m:
                raise ValueError("cannot parse row: " + line)
            terms = parse_terms(m.group(1))
            for _, name in terms:
                declare(name)
            rows.append((terms, m.group(2), int(m.group(3))))
        elif section == "Bounds":
            m = re.match(r"(-?\d+)\s*<=\s*(\S+)\s*<=\s*(-?\d+)$", line)
            if not m:
                raise ValueError("cannot parse bound: " + line)
            declare(m.group(2))
            bounds[m.group(2)] = (int(m.group(1)), int(m.group(3)))
        elif section == "Binaries":
            declare(line)
            bounds[line] = (0, 1)
            integer.add(line)
        elif section == "Generals":
            declare(line)
            integer.add(line)
    obj_terms = parse_terms(objective)
    for _, name in obj_terms:
        declare(name)
    return names, obj_terms, rows, bounds, integer


def solve(text):
    names, obj_terms, rows, bounds, integer = parse_lp(text)
    index = {name: k for k, name in enumerate(names)}
    c = np.zeros(len(names))
    for coef, name in obj_terms:
        c[index[name]] += coef
    a = np.zeros((len(rows), len(names)))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (terms, sense, rhs) in enumerate(rows):
        for coef, name in terms:
            a[r, index[name]] += coef
        if sense in ("<=", "="):
            hi[r] = rhs
        if sense in (">=", "="):
            lo[r] = rhs
    var_lo = np.array([bounds[n][0] for n in names], dtype=float)
    var_hi = np.array([np.inf if bounds[n][1] is None else bounds[n][1] for n in names], dtype=float)
    integrality = np.array([1 if n in integer else 0 for n in names])
    res = milp(c, constraints=LinearConstraint(a, lo, hi), bounds=Bounds(var_lo, var_hi), integrality=integrality)
    if not res.success:
        raise RuntimeError("external solver failed: " + res.message)
    return round(res.fun)


def main():
    cli, instance = sys.argv[1], sys.argv[2]
    expected_madi = int(sys.argv[3]) if len(sys.argv) > 3 else None
    status = 0
    with tempfile.TemporaryDirectory() as tmp:
        for objective in ("madi", "midi"):
            lp_path = Path(tmp) / f"{objective}.lp"
            out = subprocess.run([cli, "optimal", instance, "--objective", objective, "--export", str(lp_path)],
                                 check=True, capture_output=True, text=True).stdout
            embedded = int(re.search(r"objective=(\d+)", out).group(1))
            external = solve(lp_path.read_text())
            verdict = "ok" if external == embedded else "MISMATCH"
            print(f"{objective}: external={external} embedded={embedded} {verdict}")
            if external != embedded:
                status = 1
            if objective == "madi" and expected_madi is not None and external != expected_madi:
                print(f"madi: expected {expected_madi}")
                status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())

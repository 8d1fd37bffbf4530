#!/usr/bin/env python3
"""Solve exported LP files with SciPy's MILP solver and compare the optimum
with the built-in exact solver on generated scenarios.

usage: lp_crosscheck.py <sleeproute executable> <work dir>
"""

import re
import subprocess
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_expr(text):
    coeffs = {}
    sign, num = 1.0, None
    for tok in text.split():
        if tok in ("+", "-"):
            sign = -1.0 if tok == "-" else 1.0
        elif tok[0].isdigit() or tok[0] == ".":
            num = float(tok)
        else:
            coeffs[tok] = coeffs.get(tok, 0.0) + sign * (1.0 if num is None else num)
            sign, num = 1.0, None
    return coeffs


def parse_lp(text):
    section = None
    rows = []
    current = None
    binaries = []
    for raw in text.splitlines():
        if raw.startswith("\\") or not raw.strip():
            continue
        head = raw.strip()
        if head in ("Minimize", "Subject To", "Binary", "End"):
            section = head
            current = None
            continue
        if section == "Binary":
            binaries.append(head)
        elif raw.startswith("    ") and current is not None:
            current[1] += " " + head
        else:
            name, body = head.split(":", 1)
            current = [name, body]
            rows.append((section, current))
    objective = {}
    constraints = []
    for section, (name, body) in rows:
        if section == "Minimize":
            objective = parse_expr(body)
            continue
        m = re.match(r"(.*?)(<=|>=|=)\s*(-?[0-9.]+)\s*$", body)
        if not m:
            raise ValueError(f"cannot parse row {name}: {body}")
        constraints.append((parse_expr(m.group(1)), m.group(2), float(m.group(3))))
    return objective, constraints, binaries


def solve_lp(text):
    objective, constraints, binaries = parse_lp(text)
    index = {v: i for i, v in enumerate(binaries)}
    c = np.zeros(len(binaries))
    for v, k in objective.items():
        c[index[v]] = k
    a = np.zeros((len(constraints), len(binaries)))
    lo = np.full(len(constraints), -np.inf)
    hi = np.full(len(constraints), np.inf)
    for r, (expr, op, rhs) in enumerate(constraints):
        for v, k in expr.items():
            a[r, index[v]] = k
        if op in ("<=", "="):
            hi[r] = rhs
        if op in (">=", "="):
            lo[r] = rhs
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=np.ones(len(binaries)),
               bounds=Bounds(0, 1))
    if not res.success:
        raise RuntimeError(res.message)
    return res.fun


def main():
    cli, work = sys.argv[1], Path(sys.argv[2])
    work.mkdir(parents=True, exist_ok=True)
    failures = 0
    for i in range(40):
        n = 3 + i % 7
        m = min(2 + i % 3, n)
        scn = work / f"inst{i}.json"
        subprocess.run([cli, "gen", "--nodes", str(n), "--groups", str(m), "--density", "0.4",
                        "--seed", str(700 + i), "--out", str(scn)], check=True)
        lp = subprocess.run([cli, "export-ilp", "--mode", "full", str(scn)], check=True,
                            capture_output=True, text=True).stdout
        csv = subprocess.run([cli, "solve", "--strategy", "exact", "--format", "csv", str(scn)], check=True,
                             capture_output=True, text=True).stdout
        exact = float(csv.strip().splitlines()[1].rsplit(",", 1)[1])
        got = solve_lp(lp)
        ok = abs(got - exact) <= 1e-6 * max(1.0, abs(exact))
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} n={n} m={m} milp={got:.6f} exact={exact:.6f}")
    print(f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Solves a fixed-format MPS file with an independent MIP solver (HiGHS via
scipy) and optionally certifies the optimal value.

Reads the subset of MPS that our exporter emits: N/E/L/G rows, COLUMNS with
INTORG/INTEND integrality markers, RHS, and LO/UP/FX/MI bounds. Prints the
solver status and objective; with --expect V the exit code is 0 only when the
problem solves to optimality at value V.

Usage: solve_mps_external.py model.mps [--expect V] [--tol T] [--time-limit S]
"""

import argparse
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_mps(path):
    rows = []  # (name, sense)
    row_index = {}
    cols = {}  # name -> index
    col_order = []
    obj = {}  # col index -> coefficient
    entries = []  # (row idx, col idx, value)
    rhs = {}
    integer = set()
    lo, up, fx = {}, {}, {}
    minus_inf_lb = set()

    section = None
    in_int = False
    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            head = line.split()[0]
            # section keywords sit at column 0, data lines are indented
            if not line[0].isspace() and head in (
                    "NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"):
                section = head
                if head == "ENDATA":
                    break
                continue
            tok = line.split()
            if section == "ROWS":
                sense, name = tok[0], tok[1]
                if sense == "N":
                    continue  # free objective row, coefficients land in COLUMNS
                row_index[name] = len(rows)
                rows.append((name, sense))
            elif section == "COLUMNS":
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    in_int = tok[2] == "'INTORG'"
                    continue
                cname = tok[0]
                if cname not in cols:
                    cols[cname] = len(col_order)
                    col_order.append(cname)
                    if in_int:
                        integer.add(cols[cname])
                j = cols[cname]
                for k in range(1, len(tok) - 1, 2):
                    rname, val = tok[k], float(tok[k + 1])
                    if rname == "COST":
                        obj[j] = obj.get(j, 0.0) + val
                    else:
                        entries.append((row_index[rname], j, val))
            elif section == "RHS":
                for k in range(1, len(tok) - 1, 2):
                    rhs[row_index[tok[k]]] = float(tok[k + 1])
            elif section == "RANGES":
                raise ValueError("RANGES section is not supported")
            elif section == "BOUNDS":
                kind, cname = tok[0], tok[2]
                j = cols[cname]
                if kind == "LO":
                    lo[j] = float(tok[3])
                elif kind == "UP":
                    up[j] = float(tok[3])
                elif kind == "FX":
                    lo[j] = up[j] = float(tok[3])
                elif kind == "MI":
                    minus_inf_lb.add(j)
                else:
                    raise ValueError("unsupported bound type %s" % kind)

    n = len(col_order)
    c = np.zeros(n)
    for j, v in obj.items():
        c[j] = v
    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    for j in minus_inf_lb:
        lb[j] = -np.inf
    for j, v in lo.items():
        lb[j] = v
    for j, v in up.items():
        ub[j] = v
    integrality = np.zeros(n)
    for j in integer:
        integrality[j] = 1

    if rows:
        data = [e[2] for e in entries]
        ri = [e[0] for e in entries]
        ci = [e[1] for e in entries]
        a = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))
        con_lb = np.empty(len(rows))
        con_ub = np.empty(len(rows))
        for i, (_, sense) in enumerate(rows):
            b = rhs.get(i, 0.0)
            if sense == "E":
                con_lb[i], con_ub[i] = b, b
            elif sense == "L":
                con_lb[i], con_ub[i] = -np.inf, b
            elif sense == "G":
                con_lb[i], con_ub[i] = b, np.inf
            else:
                raise ValueError("unsupported row sense %s" % sense)
        constraint = LinearConstraint(a, con_lb, con_ub)
    else:
        constraint = []

    return c, constraint, integrality, Bounds(lb, ub)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("mps")
    ap.add_argument("--expect", type=float, default=None,
                    help="certify the optimum equals this value")
    ap.add_argument("--tol", type=float, default=1e-4)
    ap.add_argument("--time-limit", type=float, default=900.0)
    args = ap.parse_args()

    c, constraint, integrality, bounds = parse_mps(args.mps)
    res = milp(c, constraints=constraint, integrality=integrality, bounds=bounds,
               options={"time_limit": args.time_limit})

    status = "optimal" if res.status == 0 else "not_optimal"
    print("status", status)
    if res.fun is not None:
        print("objective %.10g" % res.fun)
    if args.expect is None:
        return 0 if res.status == 0 else 1
    if res.status == 0 and res.fun is not None and abs(res.fun - args.expect) <= args.tol:
        print("certified %.10g" % args.expect)
        return 0
    print("certification failed")
    return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Standalone MPS utility used as the default external MILP solver.

Subcommands:
  solve MODEL.mps SOLUTION.sol [--time-limit S]
      Parse the model, optimize with scipy's HiGHS-backed MILP driver and
      write a solution file (HiGHS text layout).
  residuals MODEL.mps POINTS.json OUT.json
      Parse the model and evaluate every row at the given points.

The parser here is intentionally self-contained: it shares no code with the
C++ writer, so it can serve as an independent round-trip check.
"""

import argparse
import json
import sys

INF = float("inf")


class Model:
    def __init__(self):
        self.name = ""
        self.maximize = False
        self.obj_row = None
        self.obj_offset = 0.0
        self.rows = []          # list of (name, sense) excluding objective
        self.row_index = {}
        self.cols = []          # column names in declaration order
        self.col_index = {}
        self.integer = {}       # col name -> bool
        self.entries = {}       # (row name | "OBJ-row") -> {col: coeff}
        self.obj = {}           # col -> coeff
        self.rhs = {}           # row name -> value
        self.lb = {}
        self.ub = {}


def parse_mps(path):
    m = Model()
    section = None
    in_int = False
    expect_objsense_value = False
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("*"):
                continue
            is_header = line[0] not in (" ", "\t")
            tok = line.split()
            if is_header:
                head = tok[0].upper()
                if head == "NAME":
                    m.name = tok[1] if len(tok) > 1 else ""
                    section = "NAME"
                elif head == "OBJSENSE":
                    section = "OBJSENSE"
                    if len(tok) > 1:
                        m.maximize = tok[1].upper() == "MAX"
                    else:
                        expect_objsense_value = True
                elif head in ("ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS"):
                    section = head
                elif head == "ENDATA":
                    section = "END"
                    break
                else:
                    raise ValueError(f"{path}:{lineno}: unknown section '{tok[0]}'")
                continue

            if section == "OBJSENSE" and expect_objsense_value:
                m.maximize = tok[0].upper() == "MAX"
                expect_objsense_value = False
            elif section == "ROWS":
                kind, name = tok[0].upper(), tok[1]
                if kind == "N":
                    if m.obj_row is None:
                        m.obj_row = name
                    # additional free rows are ignored
                elif kind in ("L", "G", "E"):
                    m.row_index[name] = len(m.rows)
                    m.rows.append((name, kind))
                    m.entries[name] = {}
                else:
                    raise ValueError(f"{path}:{lineno}: bad row kind '{kind}'")
            elif section == "COLUMNS":
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    flag = tok[2].strip("'")
                    if flag == "INTORG":
                        in_int = True
                    elif flag == "INTEND":
                        in_int = False
                    continue
                col = tok[0]
                if col not in m.col_index:
                    m.col_index[col] = len(m.cols)
                    m.cols.append(col)
                    m.integer[col] = in_int
                    m.lb[col] = 0.0
                    m.ub[col] = INF
                pairs = tok[1:]
                if len(pairs) % 2 != 0:
                    raise ValueError(f"{path}:{lineno}: odd column entry count")
                for i in range(0, len(pairs), 2):
                    row, val = pairs[i], float(pairs[i + 1])
                    if row == m.obj_row:
                        m.obj[col] = m.obj.get(col, 0.0) + val
                    elif row in m.entries:
                        m.entries[row][col] = m.entries[row].get(col, 0.0) + val
                    else:
                        raise ValueError(f"{path}:{lineno}: entry for unknown row '{row}'")
            elif section == "RHS":
                pairs = tok[1:]
                if len(pairs) % 2 != 0:
                    raise ValueError(f"{path}:{lineno}: odd rhs entry count")
                for i in range(0, len(pairs), 2):
                    row, val = pairs[i], float(pairs[i + 1])
                    if row == m.obj_row:
                        m.obj_offset = -val
                    elif row in m.row_index:
                        m.rhs[row] = val
                    else:
                        raise ValueError(f"{path}:{lineno}: rhs for unknown row '{row}'")
            elif section == "RANGES":
                raise ValueError(f"{path}:{lineno}: RANGES entries are not supported")
            elif section == "BOUNDS":
                kind = tok[0].upper()
                col = tok[2]
                if col not in m.col_index:
                    raise ValueError(f"{path}:{lineno}: bound for unknown column '{col}'")
                val = float(tok[3]) if len(tok) > 3 else 0.0
                if kind == "LO":
                    m.lb[col] = val
                elif kind == "UP":
                    m.ub[col] = val
                elif kind == "FX":
                    m.lb[col] = m.ub[col] = val
                elif kind == "MI":
                    m.lb[col] = -INF
                elif kind == "PL":
                    m.ub[col] = INF
                elif kind == "BV":
                    m.lb[col], m.ub[col] = 0.0, 1.0
                    m.integer[col] = True
                elif kind == "UI":
                    m.ub[col] = val
                    m.integer[col] = True
                elif kind == "LI":
                    m.lb[col] = val
                    m.integer[col] = True
                else:
                    raise ValueError(f"{path}:{lineno}: bad bound kind '{kind}'")
            elif section in ("NAME", "END", None):
                raise ValueError(f"{path}:{lineno}: data outside any section")
    if m.obj_row is None:
        raise ValueError(f"{path}: no objective (N) row")
    return m


def row_lhs(model, row, point):
    total = 0.0
    for col, coeff in model.entries[row].items():
        total += coeff * point.get(col, 0.0)
    return total


def cmd_residuals(args):
    m = parse_mps(args.model)
    with open(args.points) as fh:
        points = json.load(fh)["points"]
    out = {"objective": [], "rows": []}
    for pt in points:
        val = m.obj_offset
        for col, coeff in m.obj.items():
            val += coeff * pt.get(col, 0.0)
        out["objective"].append(val)
    for name, sense in m.rows:
        out["rows"].append({
            "name": name,
            "sense": sense,
            "rhs": m.rhs.get(name, 0.0),
            "lhs": [row_lhs(m, name, pt) for pt in points],
        })
    with open(args.out, "w") as fh:
        json.dump(out, fh)
    return 0


def cmd_solve(args):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    m = parse_mps(args.model)
    n = len(m.cols)
    c = np.zeros(n)
    for col, coeff in m.obj.items():
        c[m.col_index[col]] = coeff
    sign = -1.0 if m.maximize else 1.0
    integrality = np.array([1 if m.integer[col] else 0 for col in m.cols])
    lb = np.array([m.lb[col] for col in m.cols])
    ub = np.array([m.ub[col] for col in m.cols])

    constraints = []
    if m.rows:
        data, ri, ci = [], [], []
        lo = np.empty(len(m.rows))
        hi = np.empty(len(m.rows))
        for r, (name, sense) in enumerate(m.rows):
            b = m.rhs.get(name, 0.0)
            lo[r] = -np.inf if sense == "L" else b
            hi[r] = np.inf if sense == "G" else b
            for col, coeff in m.entries[name].items():
                data.append(coeff)
                ri.append(r)
                ci.append(m.col_index[col])
        A = coo_matrix((data, (ri, ci)), shape=(len(m.rows), n))
        constraints.append(LinearConstraint(A, lo, hi))

    options = {"mip_rel_gap": 0.0}
    if args.time_limit is not None:
        options["time_limit"] = args.time_limit
    res = milp(c=sign * c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lb, ub), options=options)

    status_map = {0: "Optimal", 1: "Time limit reached", 2: "Infeasible", 3: "Unbounded"}
    status = status_map.get(res.status, "Error")
    if status == "Time limit reached" and res.x is None:
        status = "Error"

    with open(args.solution, "w") as fh:
        fh.write("Model status\n")
        fh.write(status + "\n")
        fh.write("\n")
        fh.write("# Primal solution values\n")
        if res.x is not None:
            objective = m.obj_offset + float(np.dot(c, res.x))
            fh.write("Feasible\n")
            fh.write("Objective %.17g\n" % objective)
            fh.write("# Columns %d\n" % n)
            for j, col in enumerate(m.cols):
                fh.write("%s %.17g\n" % (col, res.x[j]))
        else:
            fh.write("None\n")
    return 0


def main(argv):
    ap = argparse.ArgumentParser(prog="mps_tool")
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("solve")
    s.add_argument("model")
    s.add_argument("solution")
    s.add_argument("--time-limit", type=float, default=None)
    s.set_defaults(fn=cmd_solve)
    r = sub.add_parser("residuals")
    r.add_argument("model")
    r.add_argument("points")
    r.add_argument("out")
    r.set_defaults(fn=cmd_residuals)
    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

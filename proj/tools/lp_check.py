#!/usr/bin/env python3
"""Independent cross-check: solve skedc-emitted LP files with scipy's MILP.

Reads the LP subset skedc writes (Minimize / obj / Subject To / Bounds /
Binaries / End) and prints one line per input file:

    <basename> objective <value>
    <basename> infeasible

Exits 0 when every file is solved to optimality or proven infeasible,
1 when the backend reports anything else, 2 on usage or parse errors.
"""

import os
import sys
from fractions import Fraction

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

SENSES = ("<=", ">=", "=")


def is_number(tok):
    return tok[0].isdigit() or (tok[0] == "." and len(tok) > 1)


def parse_terms(tokens):
    """Tokens like ['B_1_1', '+', '3', 'X_1_1_1', '-', 'Cmax'] -> [(coef, var)]."""
    terms = []
    sign = Fraction(1)
    coef = None
    for tok in tokens:
        if tok == "+":
            sign = Fraction(1)
        elif tok == "-":
            sign = Fraction(-1)
        elif is_number(tok):
            coef = Fraction(tok)
        else:
            terms.append((sign * (Fraction(1) if coef is None else coef), tok))
            sign, coef = Fraction(1), None
    if coef is not None:
        raise ValueError("dangling coefficient %s" % coef)
    return terms


def parse_lp(path):
    objective = []
    rows = []  # (terms, sense, rhs)
    bounds = []  # (var, lo or None, hi or None)
    binaries = []
    mode = None
    with open(path, "r", encoding="ascii") as f:
        for raw in f:
            s = raw.strip()
            if not s:
                continue
            if s == "Minimize":
                mode = "obj"
            elif s == "Subject To":
                mode = "rows"
            elif s == "Bounds":
                mode = "bounds"
            elif s == "Binaries":
                mode = "bin"
            elif s == "End":
                break
            elif mode == "obj":
                toks = s.split()
                if toks and toks[0].endswith(":"):
                    toks = toks[1:]
                objective.extend(parse_terms(toks))
            elif mode == "rows":
                toks = s.split()
                if not toks[0].endswith(":"):
                    raise ValueError("row without name: %s" % s)
                if len(toks) < 3 or toks[-2] not in SENSES:
                    raise ValueError("row without sense: %s" % s)
                rows.append((parse_terms(toks[1:-2]), toks[-2], Fraction(toks[-1])))
            elif mode == "bounds":
                toks = s.split()
                if len(toks) == 2 and toks[1] == "free":
                    bounds.append((toks[0], -np.inf, np.inf))
                elif len(toks) == 3 and toks[1] in (">=", "<=", "="):
                    v = Fraction(toks[2])
                    if toks[1] == ">=":
                        bounds.append((toks[0], v, None))
                    elif toks[1] == "<=":
                        bounds.append((toks[0], None, v))
                    else:
                        bounds.append((toks[0], v, v))
                elif len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
                    bounds.append((toks[2], Fraction(toks[0]), Fraction(toks[4])))
                else:
                    raise ValueError("unsupported bound: %s" % s)
            elif mode == "bin":
                binaries.extend(s.split())
            else:
                raise ValueError("text before Minimize: %s" % s)
    return objective, rows, bounds, binaries


def solve(path):
    objective, rows, bound_lines, binaries = parse_lp(path)

    index = {}

    def var(name):
        if name not in index:
            index[name] = len(index)
        return index[name]

    for _, name in objective:
        var(name)
    for terms, _, _ in rows:
        for _, name in terms:
            var(name)
    for name in binaries:
        var(name)

    n = len(index)
    c = np.zeros(n)
    for coef, name in objective:
        c[index[name]] += float(coef)

    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    integrality = np.zeros(n)
    for name in binaries:
        ub[index[name]] = 1.0
        integrality[index[name]] = 1
    for name, lo, hi in bound_lines:
        i = var(name)
        if lo is not None:
            lb[i] = float(lo)
        if hi is not None:
            ub[i] = float(hi)

    constraints = None
    if rows:
        a = np.zeros((len(rows), n))
        row_lb = np.full(len(rows), -np.inf)
        row_ub = np.full(len(rows), np.inf)
        for r, (terms, sense, rhs) in enumerate(rows):
            for coef, name in terms:
                a[r, index[name]] += float(coef)
            if sense in ("<=", "="):
                row_ub[r] = float(rhs)
            if sense in (">=", "="):
                row_lb[r] = float(rhs)
        constraints = LinearConstraint(a, row_lb, row_ub)

    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lb, ub))
    base = os.path.basename(path)
    if res.status == 0:
        print("%s objective %.9f" % (base, res.fun))
        return 0
    if res.status == 2:
        print("%s infeasible" % base)
        return 0
    print("%s error status=%d %s" % (base, res.status, res.message),
          file=sys.stderr)
    return 1


def main(argv):
    if len(argv) < 2:
        print("usage: lp_check.py model.lp [more.lp ...]", file=sys.stderr)
        return 2
    worst = 0
    for path in argv[1:]:
        try:
            worst = max(worst, solve(path))
        except (OSError, ValueError) as e:
            print("%s: %s" % (path, e), file=sys.stderr)
            return 2
    return worst


if __name__ == "__main__":
    sys.exit(main(sys.argv))

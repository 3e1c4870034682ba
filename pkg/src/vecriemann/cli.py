"""Experiment runner: ``python3 -m vecriemann <experiment> [flags]``.

Every experiment writes a CSV table (header first, one row per data point)
and, when it embeds an assertion, a final ``# PASS`` or ``# FAIL`` line.
Exit status: 0 success, 1 invalid arguments, 2 embedded assertion failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import random
import sys
from fractions import Fraction

import numpy as np

from . import gallery as G
from .integration import (
    VectorFn,
    Verdict,
    cauchy_gap,
    continuity_modulus,
    ftc_check,
    henstock_integrate,
    indefinite_integral,
    integrate,
)
from .oscillation import discontinuity_measure_upper
from .spaces import SeqLp, SeqSup, unit

EXIT_OK, EXIT_USAGE, EXIT_ASSERT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for failed assertions here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- formatting


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def rational(q: Fraction) -> list:
    """A rational as two cells: ``num/den`` and its decimal."""
    return [fmt(q), fmt(float(q))]


class Table:
    def __init__(self, header):
        self.header = list(header)
        self.rows = []
        self.notes = []
        self.passed = None

    def add(self, *cells):
        if len(cells) != len(self.header):
            raise AssertionError(f"row width {len(cells)} != header width {len(self.header)}")
        self.rows.append([fmt(c) for c in cells])

    def note(self, text):
        self.notes.append(text)

    def render(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        for n in self.notes:
            buf.write(f"# {n}\n")
        if self.passed is not None:
            buf.write("# PASS\n" if self.passed else "# FAIL\n")
        return buf.getvalue()


def _require(cond, msg):
    if not cond:
        raise UsageError(msg)


# ---------------------------------------------------------------- experiments


def exp_fat_cantor(a) -> Table:
    K = 3 if a.levels is None else a.levels
    _require(1 <= K <= 24, "--levels must lie in 1..24")
    cl = G.fat_cantor(K)
    t = Table(["level", "kind", "left", "left_decimal", "right", "right_decimal"])
    for k in range(1, K + 1):
        for lo, hi in cl.removed_intervals(k):
            t.add(k, "removed", *rational(lo), *rational(hi))
    for lo, hi in cl.kept_intervals(K):
        t.add(K, "kept", *rational(lo), *rational(hi))
    measure = cl.removed_measure(K)
    closed = G.removed_measure_closed_form(K)
    t.note(f"removed_measure,{fmt(measure)},{fmt(float(measure))}")
    t.note(f"closed_form,{fmt(closed)},{fmt(float(closed))}")
    cl.check()
    t.passed = measure == closed and abs(float(measure) - 0.5) <= 0.5 * 3.0 ** -K + a.tolerance
    return t


def exp_kadets_gap(a) -> Table:
    M = 5 if a.m_max is None else a.m_max
    _require(1 <= M <= 16, "--m-max must lie in 1..16")
    t = Table(["m", "closed_form", "closed_form_decimal", "numeric", "exceeds_half"])
    ok, prev = True, None
    for m in range(1, M + 1):
        closed, numeric = G.kadets_gap(m)
        above = numeric > 0.5 and closed > Fraction(1, 2)
        t.add(m, *rational(closed), numeric, above)
        ok = ok and above and abs(numeric - float(closed)) <= a.tolerance
        ok = ok and (prev is None or numeric < prev)
        prev = numeric
    t.passed = ok
    return t


def exp_kadets_divergence(a) -> Table:
    M = 6 if a.m_max is None else a.m_max
    depth = max(M + 1, 12) if a.depth is None else a.depth
    _require(1 <= M <= 12, "--m-max must lie in 1..12")
    _require(depth > M, "--depth must exceed --m-max")
    f = G.kadets_function(depth)
    schedule = [Fraction(1, 2 ** (m - 1)) for m in range(1, M + 1)]
    rep = integrate(f, a.tolerance, schedule)
    t = Table(["m", "mesh", "mesh_decimal", "sampled_gap", "certified_gap", "verdict"])
    for m, mesh, (_, g), (_, c) in zip(range(1, M + 1), schedule, rep.gap_by_mesh, rep.certified_by_mesh):
        t.add(m, *rational(mesh), g, c, rep.verdict.value)
    t.passed = rep.verdict is Verdict.DIVERGENT and all(c >= 0.5 for _, c in rep.certified_by_mesh)
    return t


def exp_rolewicz(a) -> Table:
    p = 0.5 if a.p is None else a.p
    _require(0 < p < 1, "--p must lie in (0, 1)")
    hs = [10.0 ** -j for j in range(1, 5)] if a.h is None else [a.h]
    _require(all(0 < h <= 1 for h in hs), "--h must lie in (0, 1]")
    t = Table(["h", "increment", "expected_increment", "quotient", "expected_quotient"])
    ok, prev = True, None
    for h in hs:
        inc, q = G.rolewicz_increment(0, h, p), G.rolewicz_quotient(0, h, p)
        e_inc, e_q = h ** (1 / p), h ** (1 / p - 1)
        t.add(h, inc, e_inc, q, e_q)
        ok = ok and abs(inc - e_inc) <= 1e-12 * e_inc and abs(q - e_q) <= 1e-12 * e_q
        ok = ok and (prev is None or q < prev)
        prev = q
    t.passed = ok
    return t


def exp_popov(a) -> Table:
    p = 0.5 if a.p is None else a.p
    g = 10 if a.grid is None else a.grid
    _require(0 < p < 1, "--p must lie in (0, 1)")
    _require(4 <= g <= 12, "--grid must lie in 4..12 (spacing 2^-grid)")
    f = G.rolewicz_function(p)
    grid = [Fraction(i, 2 ** g) for i in range(2 ** g + 1)]
    table = indefinite_integral(f, grid, mesh=Fraction(1, 1000))
    mod = continuity_modulus(table, [Fraction(1, 2 ** k) for k in range(4, g + 1)])
    ramp = max(G.ramp_distance(F, x) for x, F in table)
    t = Table(["h", "h_decimal", "max_increment", "bound"])
    ok = True
    for h, w in mod:
        bound = float(h) * (1 + 1e-6)
        t.add(*rational(h), w, bound)
        ok = ok and w <= bound
    t.note(f"max_ramp_distance,{fmt(ramp)}")
    t.passed = ok and ramp <= 1e-3
    return t


def exp_ftc(a) -> Table:
    p = 0.5 if a.p is None else a.p
    _require(0 < p < 1, "--p must lie in (0, 1)")
    sp = SeqLp(p)
    f = VectorFn.components([lambda x: x, lambda x: x * x], sp)
    fp = VectorFn.components([lambda x: np.ones_like(x), lambda x: 2 * x], sp)
    good = ftc_check(f, fp, tol=1e-6)
    rf, rd = G.rolewicz_function(p), G.rolewicz_derivative(p)
    bad = ftc_check(rf, rd, tol=1e-6)
    t = Table(["case", "space", "result", "defect", "verdict"])
    t.add("(t, t^2)", f"l_{fmt(p)}", str(good), good.defect, good.verdict.value)
    t.add("chi_[0,t]", f"L_{fmt(p)}", str(bad), bad.defect, bad.verdict.value)
    t.passed = good.holds and good.defect < 1e-6 and not bad.holds and abs(bad.defect - 1) <= 1e-12
    return t


BLOCK_CASES = ((3, 1.0, 0.01), (8, 0.5, 0.001))


def exp_blocks(a) -> Table:
    n = 200 if a.n is None else a.n
    _require(n >= 1, "--n (random trials) must be positive")
    t = Table(["p", "beta", "eps", "tails", "trials", "lower_bound", "min_actual", "ok"])
    ok = True
    for p, beta, eps in BLOCK_CASES:
        r = G.blocks_verify(G.blocks_build(p, beta, eps))
        exact = r.actual == p * beta / 2
        t.add(p, beta, eps, "none", 1, r.lower_bound, r.actual, r.ok and exact)
        ok = ok and r.ok and exact
        rng = random.Random(p)
        worst, all_ok, bound = math.inf, True, r.lower_bound
        for _ in range(n):
            tail = rng.uniform(0, eps * 2.0 ** -p) * (1 - 1e-9)
            rr = G.blocks_verify(G.blocks_build(p, beta, eps, tail, rng=rng))
            worst = min(worst, rr.actual)
            all_ok = all_ok and rr.ok
        t.add(p, beta, eps, "random", n, bound, worst, all_ok)
        ok = ok and all_ok
    t.passed = ok
    return t


LIPSCHITZ = (("t", lambda x: x, 1.0), ("sin t", np.sin, 1.0), ("t^2", lambda x: x * x, 2.0))


def exp_lipschitz(a) -> Table:
    kmax = 12 if a.levels is None else a.levels
    _require(3 <= kmax <= 16, "--levels must lie in 3..16")
    t = Table(["function", "delta", "gap", "bound", "ok"])
    ok = True
    for name, fn, L in LIPSCHITZ:
        f = VectorFn.scalar(fn)
        for k in range(3, kmax + 1):
            d = 2.0 ** -k
            g = cauchy_gap(f, d)
            t.add(name, d, g, L * d, g <= L * d)
            ok = ok and g <= L * d
    base = integrate(VectorFn.scalar(lambda x: x), 1e-6, [1e-2, 1e-4, 5e-7])
    est = base.estimate.get(1)
    t.note(f"integral_of_t,{fmt(est)},{base.verdict.value}")
    t.passed = ok and abs(est - 0.5) <= 1e-6
    return t


def exp_henstock(a) -> Table:
    kmax = 12 if a.depth is None else a.depth
    _require(6 <= kmax <= 14, "--depth must lie in 6..14")
    f = G.wild_function()
    gauges = G.wild_gauges(5, kmax)
    t = Table(["estimate", "exact", "error"])
    try:
        v = henstock_integrate(f, gauges, 5e-4).get(1)
    except Exception as exc:  # schedule exhausted
        t.note(f"error,{exc}")
        t.passed = False
        return t
    exact = math.sin(1)
    t.add(v, exact, abs(v - exact))
    t.passed = abs(v - exact) <= 1e-3
    return t


def exp_osc_measure(a) -> Table:
    K = 20 if a.depth is None else a.depth
    _require(1 <= K <= 40, "--depth must lie in 1..40")
    f = G.kadets_function(max(K, 1), hint_depth=0)
    t = Table(["K", "measure", "measure_decimal", "expected", "expected_decimal"])
    ok = True
    for k in range(1, K + 1):
        mu = discontinuity_measure_upper(f, 1, depth=k)
        expected = 1 - (1 - Fraction(1, 3 ** k)) / 2
        t.add(k, *rational(mu), *rational(expected))
        ok = ok and mu == expected
    t.passed = ok and (K < 20 or abs(float(mu) - 0.5) <= 1e-6)
    return t


def exp_weak_null(a) -> Table:
    n = 50 if a.n is None else a.n
    _require(1 <= n <= 1000, "--n must lie in 1..1000")
    vecs = [unit(j, SeqSup()) for j in range(1, n + 1)]
    battery = [G.geometric_battery_element(n + 1)]
    decay, floor = G.weak_null_probe(vecs, battery)
    t = Table(["n", "pairing", "expected", "norm"])
    ok = floor == 1
    for j, d in enumerate(decay, start=1):
        t.add(j, d, 2.0 ** -j, 1.0)
        ok = ok and d == 2.0 ** -j
    t.note(f"norm_floor,{fmt(float(floor))}")
    t.passed = ok
    return t


EXPERIMENTS = {
    "fat-cantor": exp_fat_cantor,
    "kadets-gap": exp_kadets_gap,
    "kadets-divergence": exp_kadets_divergence,
    "rolewicz": exp_rolewicz,
    "popov": exp_popov,
    "ftc": exp_ftc,
    "blocks": exp_blocks,
    "lipschitz": exp_lipschitz,
    "henstock-ftc": exp_henstock,
    "osc-measure": exp_osc_measure,
    "weak-null": exp_weak_null,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vecriemann", description="Run an experiment and emit a CSV table.")
    ap.add_argument("experiment", choices=sorted(EXPERIMENTS))
    ap.add_argument("--output", default=None, help="write here instead of standard output")
    ap.add_argument("--tolerance", type=float, default=1e-9)
    ap.add_argument("--levels", type=int)
    ap.add_argument("--m-max", type=int, dest="m_max")
    ap.add_argument("--p", type=float)
    ap.add_argument("--h", type=float)
    ap.add_argument("--grid", type=int)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--n", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not (args.tolerance > 0 and math.isfinite(args.tolerance)):
        print("vecriemann: error: --tolerance must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        table = EXPERIMENTS[args.experiment](args)
    except UsageError as exc:
        print(f"vecriemann: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = table.render()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_ASSERT if table.passed is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""
Command line front end.

    cyclic-linf check [STRUCTURE.json ...]
    cyclic-linf transfer [STRUCTURE.json ...]
    cyclic-linf potential [STRUCTURE.json ...] [--degree D]
    cyclic-linf milnor | behrend [GERMS.json] [--poly TEXT ...] [--max-degree N]
    cyclic-linf ts [PAIRS.json] [--poly A --poly B]
    cyclic-linf blowup-check [BLOWUPS.json]
    cyclic-linf joyce-song --formula 1|2|pairs [FIXTURES.json]
    cyclic-linf motivic [RESOLUTIONS.json]
    cyclic-linf suite [--threads T]

Without input files each command runs on the shipped corpus.  Exit status is
0 when nothing failed, 1 on a verification failure (or an inconclusive check
without --allow-inconclusive) and 2 on bad input.
"""

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import suite
from .fixtures import data_path
from .graded_core import format_scalar
from .joyce_song import (
    BlockPotential, ExtProfile, check_formula1, check_formula2, stable_pair_behrend,
    stable_pair_chain,
)
from .linf import LInfinityStructure, check_structure
from .milnor import (
    DEFAULT_MAX_DEGREE, Inconclusive, blowup_formula_check, milnor_data, thom_sebastiani_check,
)
from .motivic import (
    ResolutionDatum, euler_specialize, motivic_milnor_fiber, motivic_ts_check,
)
from .potential import FormalPowerSeries, parse_polynomial, superpotential
from .report import FAIL, INCONCLUSIVE, PASS, SHADOW, Report
from .transfer import transfer, verify_transfer


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input

class Inputs:
    """Raw bytes of everything read, for the digest."""

    def __init__(self):
        self.blobs = []

    def read(self, path, shipped=False):
        p = data_path(path) if shipped else Path(path)
        label = ("<corpus>/" + path) if shipped else str(path)
        try:
            raw = p.read_bytes()
        except OSError as e:
            raise InputError("%s: cannot read (%s)" % (label, e.strerror))
        self.blobs.append((label, raw))
        try:
            return json.loads(raw.decode("utf-8"))
        except json.JSONDecodeError as e:
            raise InputError("%s:%d:%d: %s" % (label, e.lineno, e.colno, e.msg))
        except UnicodeDecodeError:
            raise InputError("%s: not UTF-8 text" % label)

    def text(self, label, s):
        self.blobs.append((label, s.encode()))

    def digest(self):
        h = hashlib.sha256()
        for label, raw in self.blobs:
            h.update(label.encode() + b"\0" + raw + b"\0")
        return h.hexdigest()


def _located(label, fn, *args):
    try:
        return fn(*args)
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise InputError("%s: %s" % (label, e))


def _series(obj, label):
    if isinstance(obj, str):
        return _located(label, parse_polynomial, obj)
    return _located(label, FormalPowerSeries.from_json, obj)


def _germ_list(obj, label):
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise InputError("%s: expected a germ or a list of germs" % label)
    out = []
    for i, g in enumerate(obj):
        loc = "%s[%d]" % (label, i)
        if isinstance(g, dict) and "f" in g:
            out.append((str(g.get("name", i)), _series(g["f"], loc)))
        else:
            f = _series(g, loc)
            out.append((f.to_string(), f))
    return out


def load_germs(args, inputs):
    out = []
    for path in args.inputs:
        out += _germ_list(inputs.read(path), path)
    for i, text in enumerate(args.poly or []):
        inputs.text("--poly[%d]" % i, text)
        out.append((text, _series(text, "--poly[%d]" % i)))
    if not out:
        out = _germ_list(inputs.read("germs.json", shipped=True), "<corpus>/germs.json")
    return out


def load_structures(args, inputs):
    out = []
    for path in args.inputs:
        obj = inputs.read(path)
        out.append((Path(path).stem, _located(path, LInfinityStructure.from_json, obj)))
    if not out:
        for name in inputs.read("structure_index.json", shipped=True):
            fn = "structure_%s.json" % name
            obj = inputs.read(fn, shipped=True)
            out.append((name, _located(fn, LInfinityStructure.from_json, obj)))
    return out


# ---------------------------------------------------------------------------
# per-item work; each returns (row cells, report)

def _witness_cell(r):
    if r.status in (PASS, SHADOW) or r.witness is None:
        return ""
    return json.dumps(r.witness, sort_keys=True, default=str)


def item_check(args, name, L):
    rep, _ = check_structure(L, args.cap)
    rep.check = name
    return [name, str(L.space.dim), str(args.cap or L.arity_cap)], rep


def item_transfer(args, name, L):
    try:
        res = transfer(L, cap=args.cap)
    except ValueError as e:
        return [name, str(L.space.dim), "-"], Report(name, FAIL, {"error": str(e)})
    rep = verify_transfer(L, res, args.cap)
    rep.check = name
    rep.details["result"] = res.to_json()
    return [name, str(L.space.dim), str(res.structure.space.dim)], rep


def item_potential(args, name, L):
    try:
        res = transfer(L, cap=args.cap)
        f = superpotential(res.structure, D=args.degree)
    except ValueError as e:
        return [name, "-", ""], Report(name, FAIL, {"error": str(e)})
    rep = Report(name, PASS, None, {"potential": f.to_json()})
    return [name, str(len(f.vars)), f.to_string() or "0"], rep


def item_milnor(args, name, f):
    try:
        d = milnor_data(f, args.max_degree)
    except Inconclusive as e:
        return [name, str(len(f.vars)), "-", "-", "-", "-"], Report(
            name, INCONCLUSIVE, {"reason": str(e)})
    return ([name, str(d.n), str(d.mu), str(d.chi), str(d.behrend), str(d.certificate)],
            Report(name, PASS, None, d.to_json()))


def item_behrend(args, name, f):
    try:
        d = milnor_data(f, args.max_degree)
    except Inconclusive as e:
        return [name, "-", "-", "-"], Report(name, INCONCLUSIVE, {"reason": str(e)})
    # for an isolated germ nu = (-1)^n (1 - chi) is the Milnor number
    ok = d.behrend == (-1) ** d.n * (1 - d.chi) == d.mu
    return ([name, str(d.n), str(1 - d.chi), str(d.behrend)],
            Report(name, PASS if ok else FAIL, None if ok else {"nu": d.behrend, "mu": d.mu},
                   {"nu": d.behrend, "chi": d.chi, "mu": d.mu}))


def item_ts(args, name, pair):
    f1, f2 = pair
    try:
        r = thom_sebastiani_check(f1, f2, args.max_degree)
    except Inconclusive as e:
        return [name, "-", "-"], Report(name, INCONCLUSIVE, {"reason": str(e)})
    r.check = name
    mu = r.details["mu"]
    om = r.details["one_minus_chi"]
    return [name, " ".join(map(str, mu)), " ".join(map(str, om))], r


def item_blowup(args, name, entry):
    f, center, strata = entry
    try:
        r = blowup_formula_check(f, center, strata, args.max_degree)
    except Inconclusive as e:
        r = Report(name, INCONCLUSIVE, {"reason": str(e)})
    except ValueError as e:
        r = Report(name, FAIL, {"error": str(e)})
    r.check = name
    d = r.details
    return [name, ",".join(center), str(d.get("lhs", "-")), str(d.get("rhs", "-"))], r


def item_js1(args, name, entry):
    p, f1, f2, bp = entry
    try:
        r = check_formula1(p, f1, f2, bp, max_degree=args.max_degree)
    except ValueError as e:
        r = Report(name, FAIL, {"error": str(e)})
    r.check = name
    d = r.details
    return [name, str(d.get("lhs", "-")), str(d.get("rhs", "-")),
            str(d.get("euler_form", "-"))], r


def item_js2(args, name, entry):
    p, bp, s21, s12 = entry
    try:
        r = check_formula2(p, bp, s21, s12, args.max_degree)
    except ValueError as e:
        r = Report(name, FAIL, {"error": str(e)})
    r.check = name
    main = next((q for q in r.parts if q.check == "formula2_chi"), None)
    d = main.details if main else {}
    return [name, str(r.details.get("d21", "-")), str(r.details.get("d12", "-")),
            str(d.get("lhs", "-")), str(d.get("rhs", "-"))], r


def item_pairs(args, name, entry):
    chiF, nuF, h0, h1 = entry
    c = stable_pair_chain(chiF, nuF, h0, h1)
    nuP = stable_pair_behrend(chiF, nuF)
    # the status follows the argument as written; the recomputed chain is shown alongside
    ok = c["as_written"] == nuP
    r = Report(name, PASS if ok else FAIL, None if ok else {"as_written": c["as_written"]}, c)
    return [name, str(chiF), str(nuF), str(nuP), str(c["as_written"]), str(c["chain"])], r


def item_motivic(args, name, entry):
    datum, germ = entry
    S = motivic_milnor_fiber(datum)
    e = euler_specialize(S)
    if germ is None:
        return [name, str(S), str(e), "-"], Report(name, PASS, None, {"class": S.to_json()})
    try:
        d = milnor_data(germ, args.max_degree)
    except Inconclusive as ex:
        return [name, str(S), str(e), "-"], Report(name, INCONCLUSIVE, {"reason": str(ex)})
    ok = e == 1 - d.mu
    return ([name, str(S), str(e), str(1 - d.mu)],
            Report(name, PASS if ok else FAIL, None if ok else {"euler": e, "one_minus_mu": 1 - d.mu},
                   {"class": S.to_json(), "euler": e, "mu": d.mu}))


def item_motivic_ts(args, name, entry):
    (ra, fa), (rb, fb) = entry
    S1, S2 = motivic_milnor_fiber(ra), motivic_milnor_fiber(rb)
    chi = None
    if fa is not None and fb is not None:
        f1, f2 = suite._disjoint(fa, fb)
        try:
            from .potential import block_sum
            chi = (milnor_data(f1, args.max_degree).chi, milnor_data(f2, args.max_degree).chi,
                   milnor_data(block_sum(f1, f2), args.max_degree).chi)
        except Inconclusive as e:
            return [name, "-", "-"], Report(name, INCONCLUSIVE, {"reason": str(e)})
    r = motivic_ts_check(S1, S2, 1 - (1 - S1) * (1 - S2), chi)
    r.check = name
    om = r.parts[-1].details["one_minus_e"]
    return [name, str(1 - (1 - S1) * (1 - S2)), " ".join(map(str, om))], r


# ---------------------------------------------------------------------------
# commands: each returns (title, header, items, worker)

def cmd_check(args, inputs):
    return (["structure", "dim", "cap"], load_structures(args, inputs), item_check)


def cmd_transfer(args, inputs):
    return (["structure", "dim", "dim H"], load_structures(args, inputs), item_transfer)


def cmd_potential(args, inputs):
    return (["structure", "vars", "potential"], load_structures(args, inputs), item_potential)


def cmd_milnor(args, inputs):
    return (["germ", "n", "mu", "chi", "behrend", "k"], load_germs(args, inputs), item_milnor)


def cmd_behrend(args, inputs):
    return (["germ", "n", "1-chi", "nu"], load_germs(args, inputs), item_behrend)


def cmd_ts(args, inputs):
    items = []
    for path in args.inputs:
        obj = inputs.read(path)
        if not isinstance(obj, list):
            raise InputError("%s: expected a list of pairs" % path)
        for i, pair in enumerate(obj):
            loc = "%s[%d]" % (path, i)
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError("%s: expected a pair of germs" % loc)
            f1, f2 = _series(pair[0], loc + "[0]"), _series(pair[1], loc + "[1]")
            items.append(("%s [+] %s" % (f1.to_string(), f2.to_string()), (f1, f2)))
    if args.poly:
        if len(args.poly) != 2:
            raise InputError("--poly: ts needs exactly two germs")
        for i, t in enumerate(args.poly):
            inputs.text("--poly[%d]" % i, t)
        f1, f2 = (_series(t, "--poly") for t in args.poly)
        items.append(("%s [+] %s" % tuple(args.poly), (f1, f2)))
    if not items:
        inputs.text("<builtin>/ts_pairs", json.dumps(suite.MIXED_TS))
        items = [("%s [+] %s" % p, (parse_polynomial(p[0]), parse_polynomial(p[1])))
                 for p in suite.MIXED_TS]
    return (["pair", "mu", "1-chi"], items, item_ts)


def cmd_blowup(args, inputs):
    if args.inputs:
        srcs = [(p, inputs.read(p)) for p in args.inputs]
    else:
        srcs = [("<corpus>/blowups.json", inputs.read("blowups.json", shipped=True))]
    items = []
    for label, obj in srcs:
        if not isinstance(obj, list):
            raise InputError("%s: expected a list of blow-up fixtures" % label)
        for i, b in enumerate(obj):
            loc = "%s[%d]" % (label, i)
            try:
                f = _series(b["f"], loc)
                items.append((str(b.get("name", i)), (f, list(b["center"]), list(b["strata"]))))
            except (KeyError, TypeError) as e:
                raise InputError("%s: missing field %s" % (loc, e))
    return (["fixture", "center", "lhs", "rhs"], items, item_blowup)


def _fixture_list(args, inputs, shipped):
    if args.inputs:
        srcs = [(p, inputs.read(p)) for p in args.inputs]
    else:
        srcs = [("<corpus>/" + shipped, inputs.read(shipped, shipped=True))]
    for label, obj in srcs:
        if not isinstance(obj, list):
            raise InputError("%s: expected a list" % label)
        for i, e in enumerate(obj):
            yield "%s[%d]" % (label, i), e


def cmd_joyce_song(args, inputs):
    items = []
    if args.formula == "1":
        for loc, e in _fixture_list(args, inputs, "js_grid.json"):
            def build(e=e):
                return (ExtProfile.from_json(e["profile"]), FormalPowerSeries.from_json(e["f1"]),
                        FormalPowerSeries.from_json(e["f2"]), BlockPotential.from_json(e["mixed"]))
            items.append((str(e.get("name", loc)), _located(loc, build)))
        return (["fixture", "lhs", "rhs", "chi(E1,E2)"], items, item_js1)
    if args.formula == "2":
        for loc, e in _fixture_list(args, inputs, "js_formula2.json"):
            def build(e=e):
                return (ExtProfile.from_json(e["profile"]), BlockPotential.from_json(e["potential"]),
                        list(e["strata21"]), list(e["strata12"]))
            items.append((str(e.get("name", loc)), _located(loc, build)))
        return (["fixture", "d21", "d12", "lhs", "rhs"], items, item_js2)
    for loc, e in _fixture_list(args, inputs, "stable_pairs.json"):
        def build(e=e):
            return (int(e["chiF"]), int(e["nuF"]), e.get("h0"), e.get("h1"))
        entry = _located(loc, build)
        items.append(("chiF=%d,nuF=%d" % entry[:2], entry))
    return (["pair", "chi(F)", "nu(F)", "nu_P", "as written", "recomputed"], items, item_pairs)


def cmd_motivic(args, inputs):
    if args.inputs:
        srcs = [(p, inputs.read(p)) for p in args.inputs]
        pairs = []
    else:
        srcs = [("<corpus>/resolutions.json", inputs.read("resolutions.json", shipped=True))]
        pairs = inputs.read("motivic_ts_pairs.json", shipped=True)
    res = {}
    items = []
    for label, obj in srcs:
        if isinstance(obj, dict):
            obj = [obj]
        for i, r in enumerate(obj):
            loc = "%s[%d]" % (label, i)
            datum = _located(loc, ResolutionDatum.from_json, r)
            germ = _series(r["germ"], loc) if r.get("germ") is not None else None
            res[datum.name] = (datum, germ)
            items.append((datum.name, ("fiber", (datum, germ))))
    for a, b in pairs:
        if a not in res or b not in res:
            raise InputError("motivic_ts_pairs: unknown resolution %s" % (a if a not in res else b))
        items.append(("%s [+] %s" % (a, b), ("ts", (res[a], res[b]))))

    def work(args, name, entry):
        kind, e = entry
        if kind == "fiber":
            return item_motivic(args, name, e)
        cells, r = item_motivic_ts(args, name, e)
        return [cells[0], cells[1], "-", cells[2]], r
    return (["input", "class", "euler", "1-mu | 1-e"], items, work)


COMMANDS = {
    "check": cmd_check,
    "transfer": cmd_transfer,
    "potential": cmd_potential,
    "milnor": cmd_milnor,
    "behrend": cmd_behrend,
    "ts": cmd_ts,
    "blowup-check": cmd_blowup,
    "joyce-song": cmd_joyce_song,
    "motivic": cmd_motivic,
}


# ---------------------------------------------------------------------------
# output

def table(header, rows):
    cols = [header] + rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    lines = []
    for j, r in enumerate(cols):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if j == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def overall(reports, allow_inconclusive):
    st = [r.status for r in reports]
    if FAIL in st:
        return FAIL, 1
    if INCONCLUSIVE in st:
        return INCONCLUSIVE, 0 if allow_inconclusive else 1
    return PASS, 0


def render(command, digest, header, rows, reports, as_json, allow_inconclusive):
    status, code = overall(reports, allow_inconclusive)
    if as_json:
        obj = {"command": command, "inputs_sha256": digest, "status": status,
               "reports": [r.to_json() for r in reports]}
        text = json.dumps(obj, indent=1, sort_keys=True, default=_json_default)
        return text + "\n", code
    body = [r + [s.status, _witness_cell(s)] for r, s in zip(rows, reports)]
    lines = ["command: %s" % command, "inputs:  sha256:%s" % digest, "",
             table(header + ["status", "witness"], body), "",
             "%s: %d checks, %d failed, %d inconclusive"
             % (status, len(reports), sum(r.status == FAIL for r in reports),
                sum(r.status == INCONCLUSIVE for r in reports))]
    return "\n".join(lines) + "\n", code


def _json_default(x):
    try:
        return format_scalar(x)
    except Exception:
        return str(x)


def _map(threads, fn, items):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def run_suite_text(threads=1, as_json=False, allow_inconclusive=False):
    inputs = Inputs()
    for name in sorted(p.name for p in data_path("").iterdir() if p.suffix == ".json"):
        inputs.read(name, shipped=True)
    reports = suite.run_suite(threads)
    rows = [[r.check.split(" ", 1)[0], r.check.split(" ", 1)[1]] for r in reports]
    for r in reports:
        r.check = r.check.split(" ", 1)[1]
    return render("suite", inputs.digest(), ["id", "criterion"], rows, reports, as_json,
                  allow_inconclusive)


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="cyclic-linf",
                                 description="Exact checks for cyclic L-infinity algebras, "
                                             "Milnor fibres and Behrend-function identities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the reports as JSON")
    common.add_argument("--threads", type=int, default=1, metavar="T")
    common.add_argument("--allow-inconclusive", action="store_true")
    common.add_argument("--cap", type=int, default=None, metavar="K", help="arity cap")
    common.add_argument("--degree", type=int, default=None, metavar="D",
                        help="truncation degree of the superpotential")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, metavar="N",
                        help="degree bound of the Milnor computation (default %(default)s)")
    common.add_argument("--timing", action="store_true",
                        help="append wall time (makes the output run-dependent)")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["suite"]:
        p = sub.add_parser(name, parents=[common])
        if name != "suite":
            p.add_argument("inputs", nargs="*", metavar="FILE")
        if name in ("milnor", "behrend", "ts"):
            p.add_argument("--poly", action="append", metavar="TEXT",
                           help="germ as a polynomial, e.g. 'x^3+y^3'")
        if name == "joyce-song":
            p.add_argument("--formula", choices=["1", "2", "pairs"], default="1")
    return ap


def run(argv=None):
    """Returns (output text, exit code)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return "", 2 if e.code else 0
    if args.threads < 1:
        return "error: --threads must be positive\n", 2
    t0 = time.perf_counter()
    if args.command == "suite":
        text, code = run_suite_text(args.threads, args.json, args.allow_inconclusive)
    else:
        inputs = Inputs()
        try:
            header, items, worker = COMMANDS[args.command](args, inputs)
        except InputError as e:
            return "error: %s\n" % e, 2
        results = _map(args.threads, lambda it: worker(args, it[0], it[1]), items)
        rows = [c for c, _ in results]
        reports = [r for _, r in results]
        for (name, _), r in zip(items, reports):
            r.check = name
        text, code = render(args.command, inputs.digest(), header, rows, reports, args.json,
                            args.allow_inconclusive)
    if args.timing:
        text += "time: %.2fs\n" % (time.perf_counter() - t0)
    return text, code


def main(argv=None):
    text, code = run(argv)
    if code == 2 and text.startswith("error"):
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

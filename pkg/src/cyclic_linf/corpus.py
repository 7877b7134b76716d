"""
The shipped fixture corpus: builders, JSON loaders and a writer.

    python -m cyclic_linf.corpus            # rewrite src/cyclic_linf/data
    python -m cyclic_linf.corpus --check    # compare the files with the builders
"""

import argparse
import json
import sys
from pathlib import Path

from .fixtures import (
    AFF1, DGA_UV, build_dgla_corpus, data_path, load_json, structure_from_potential,
    tensor_dgla,
)
from .joyce_song import BlockPotential, ExtProfile
from .linf import LInfinityStructure
from .motivic import ResolutionDatum
from .potential import FormalPowerSeries, parse_polynomial

# germs used throughout, by name
GERMS = {
    "T2": "T^2",
    "x3": "x^3",
    "x3+y3": "x^3+y^3",
    "cusp": "x^2+y^3",
    "node": "x^2+y^2",
    "xy": "x*y",
    "smooth": "x",
    "D4": "x^2*y-y^3",
    "E6": "x^3+y^4",
    "A3": "x^4",
}

# minimal structures realising a potential (names shared with the dgla corpus)
POTENTIAL_STRUCTURES = {
    "pot_D4": "x^2*y-y^3",
    "pot_E6": "x^3+y^4",
    "pot_A3": "t^4",
}

SPLIT_PAIRS = [
    ("cubic", "cubic"),
    ("cubic", "quartic"),
    ("quartic", "cubic_quartic"),
    ("cubic_quartic", "cubic_quartic"),
    ("massey_so3", "cubic"),
    ("so3_uv", "quartic"),
    ("acyclic", "cubic"),
    ("pot_D4", "pot_E6"),
    ("pot_A3", "quartic"),
    ("so3_sphere", "pot_D4"),
]

# objects for the Joyce-Song grid: self-Ext dimensions and a potential
JS_OBJECTS = {
    "spherical": ((1, 0, 0, 1), ""),
    "line": ((1, 1, 1, 1), "0"),
    "x3": ((1, 1, 1, 1), "a^3"),
    "cusp": ((1, 2, 2, 1), "a^2+b^3"),
    "node": ((1, 2, 2, 1), "a^2+b^2"),
    "D4": ((1, 2, 2, 1), "a^2*b-b^3"),
}

JS_GRID = [
    ("spherical", "spherical", (0, 0, 0, 0), None),
    ("spherical", "spherical", (0, 1, 1, 0), "z1*w1"),
    ("spherical", "spherical", (0, 2, 0, 1), None),
    ("spherical", "x3", (0, 0, 0, 0), None),
    ("spherical", "x3", (1, 1, 0, 0), None),
    ("x3", "x3", (0, 0, 0, 0), None),
    ("x3", "x3", (0, 1, 1, 0), "z1*w1"),
    ("x3", "x3", (0, 1, 1, 0), "z1*w1+a*z1*w1"),
    ("x3", "cusp", (0, 2, 2, 0), "z1*w1+z2*w2"),
    ("cusp", "node", (0, 1, 1, 0), "z1*w1+b*z1*w1"),
    ("cusp", "node", (0, 2, 0, 1), None),
    ("line", "x3", (0, 1, 1, 0), "z1*w1"),
    ("line", "spherical", (0, 0, 0, 0), None),
    ("D4", "spherical", (1, 1, 0, 0), None),
    ("D4", "node", (0, 1, 1, 0), "z1*w1+a*b*z1*w1"),
    ("node", "node", (0, 0, 0, 0), None),
]

# potentials on Ext^1(E, E) with their blocks; strata over P(Ext^1(E_2, E_1))
# and P(Ext^1(E_1, E_2)) with one representative point each
JS_FORMULA2 = [
    {"name": "empty", "self": [(1, 1, 1, 1), (1, 0, 0, 1)], "mixed_ext": (0, 0, 0, 0),
     "f1": "x^3", "f2": "", "mixed": None, "z": [], "w": [],
     "strata21": [], "strata12": []},
    {"name": "symmetric", "self": [(1, 1, 1, 1), (1, 1, 1, 1)], "mixed_ext": (0, 1, 1, 0),
     "f1": "x^2", "f2": "y^3", "mixed": "z*w", "z": ["z"], "w": ["w"],
     "strata21": [{"chi": 1, "point": {"w": 1}}], "strata12": [{"chi": 1, "point": {"z": 1}}]},
    {"name": "rank_1_0", "self": [(1, 1, 1, 1), (1, 1, 1, 1)], "mixed_ext": (0, 0, 1, 0),
     "f1": "x^3", "f2": "y^2", "mixed": None, "z": [], "w": ["w"],
     "strata21": [{"chi": 1, "point": {"w": 1}}], "strata12": []},
]

BLOWUPS = [
    {"name": "node_Z_line", "f": "x^2+y^2", "center": ["y"],
     "strata": [{"chi": 1, "chart": "y", "point": {}}]},
    {"name": "xy_Z_line", "f": "x*y", "center": ["y"],
     "strata": [{"chi": 1, "chart": "y", "point": {}}]},
    {"name": "xy_Z_origin", "f": "x*y", "center": ["x", "y"],
     "strata": [{"chi": 0, "chart": "x", "point": {"y": 1}},
                {"chi": 1, "chart": "x", "point": {}},
                {"chi": 1, "chart": "y", "point": {}}]},
    {"name": "D4_Z_origin", "f": "x^2*y-x*y^2", "center": ["x", "y"],
     "strata": [{"chi": -1, "chart": "x", "point": {"y": 2}},
                {"chi": 1, "chart": "x", "point": {}},
                {"chi": 1, "chart": "x", "point": {"y": 1}},
                {"chi": 1, "chart": "y", "point": {}}]},
]
CRITERION_BLOWUPS = ("node_Z_line", "xy_Z_line")

# resolution data of plane curve germs (exceptional components only)
RESOLUTIONS = [
    {"name": "node", "germ": "x^2+y^2", "multiplicities": {"E": 2},
     "strata": [{"I": ["E"], "chi_base": 0}]},
    {"name": "cusp", "germ": "x^2+y^3", "multiplicities": {"E1": 2, "E2": 3, "E3": 6},
     "strata": [{"I": ["E1"], "chi_base": 1}, {"I": ["E2"], "chi_base": 1},
                {"I": ["E3"], "chi_base": -1}, {"I": ["E1", "E3"], "chi_base": 1},
                {"I": ["E2", "E3"], "chi_base": 1}]},
    {"name": "smooth", "germ": "x", "multiplicities": {"E": 1},
     "strata": [{"I": ["E"], "chi_base": 1}]},
]
MOTIVIC_TS_PAIRS = [("node", "node"), ("cusp", "node")]

STABLE_PAIRS = [
    {"chiF": 0, "nuF": 1}, {"chiF": 1, "nuF": 2}, {"chiF": 2, "nuF": -1},
    {"chiF": 3, "nuF": 4, "h0": 3, "h1": 0},
]


def series(text, vars=None):
    if not text:
        return FormalPowerSeries(tuple(vars or ()), {})
    if text == "0":
        return FormalPowerSeries(tuple(vars or ("a",)), {})
    return parse_polynomial(text, vars)


def _rename_series(f, mapping):
    return f.rename(mapping)


# ---------------------------------------------------------------------------
# builders

def build_structures():
    out = dict(build_dgla_corpus())
    for name, text in POTENTIAL_STRUCTURES.items():
        out[name] = structure_from_potential(parse_polynomial(text))
    return out


def build_corrupted():
    """Fixtures that must fail the structure check (for the command line)."""
    good = tensor_dgla(DGA_UV, AFF1)
    obj = good.to_json()
    # break the Jacobi identity: perturb one bracket constant
    for op in obj["operations"]:
        if op["arity"] == 2:
            op["entries"][0]["coeff"] = "2/1"
    return {"aff1_uv_bad": obj}


def js_grid_entries():
    out = []
    for a, b, mixed_ext, mixed in JS_GRID:
        e1, t1 = JS_OBJECTS[a]
        e2, t2 = JS_OBJECTS[b]
        v1 = ("a", "b")[:e1[1]]
        v2 = ("c", "d")[:e2[1]]
        f1 = series(t1, v1) if t1 else FormalPowerSeries((), {})
        f2 = series(t2.replace("a", "c").replace("b", "d"), v2) if t2 else FormalPowerSeries((), {})
        if t2 == "0":
            f2 = FormalPowerSeries(v2, {})
        if t1 == "0":
            f1 = FormalPowerSeries(v1, {})
        p = ExtProfile.direct(e1, e2, mixed_ext)
        z = ["z%d" % i for i in range(1, p.ext["12"][1] + 1)]
        w = ["w%d" % i for i in range(1, p.ext["21"][1] + 1)]
        vars = list(v1) + list(v2) + z + w
        m = series(mixed, vars) if mixed else None
        bp = BlockPotential.assemble(f1, f2, m, z, w)
        out.append({"name": "%s+%s%s" % (a, b, "".join(str(x) for x in mixed_ext))
                    + ("_m" if mixed else ""),
                    "profile": p.to_json(), "f1": f1.to_json(), "f2": f2.to_json(),
                    "mixed": bp.to_json()})
    # disambiguate repeated names
    seen = {}
    for e in out:
        k = e["name"]
        seen[k] = seen.get(k, 0) + 1
        if seen[k] > 1:
            e["name"] = "%s_%d" % (k, seen[k])
    return out


def js_formula2_entries():
    out = []
    for fx in JS_FORMULA2:
        e1, e2 = fx["self"]
        v1 = ("x",)[:e1[1]]
        v2 = ("y",)[:e2[1]]
        f1 = series(fx["f1"], v1) if fx["f1"] else FormalPowerSeries((), {})
        f2 = series(fx["f2"], v2) if fx["f2"] else FormalPowerSeries((), {})
        p = ExtProfile.direct(e1, e2, fx["mixed_ext"])
        vars = list(v1) + list(v2) + fx["z"] + fx["w"]
        m = series(fx["mixed"], vars) if fx["mixed"] else None
        bp = BlockPotential.assemble(f1, f2, m, fx["z"], fx["w"])
        out.append({"name": fx["name"], "profile": p.to_json(), "potential": bp.to_json(),
                    "strata21": fx["strata21"], "strata12": fx["strata12"]})
    return out


def blowup_entries():
    return [{"name": b["name"], "f": parse_polynomial(b["f"]).to_json(), "center": b["center"],
             "strata": b["strata"], "criterion": b["name"] in CRITERION_BLOWUPS}
            for b in BLOWUPS]


def resolution_entries():
    out = []
    for r in RESOLUTIONS:
        d = ResolutionDatum(r["name"], r["multiplicities"], r["strata"]).to_json()
        d["germ"] = parse_polynomial(r["germ"]).to_json()
        out.append(d)
    return out


def germ_entries():
    return [{"name": k, "f": parse_polynomial(v).to_json()} for k, v in GERMS.items()]


def build_files():
    """File name -> JSON object for everything in data/."""
    files = {}
    structures = build_structures()
    files["dgla_index.json"] = sorted(build_dgla_corpus())
    files["structure_index.json"] = sorted(structures)
    for name, L in structures.items():
        files["structure_%s.json" % name] = L.to_json()
    for name, obj in build_corrupted().items():
        files["corrupt_%s.json" % name] = obj
    files["split_pairs.json"] = [list(p) for p in SPLIT_PAIRS]
    files["germs.json"] = germ_entries()
    files["blowups.json"] = blowup_entries()
    files["js_grid.json"] = js_grid_entries()
    files["js_formula2.json"] = js_formula2_entries()
    files["stable_pairs.json"] = STABLE_PAIRS
    files["resolutions.json"] = resolution_entries()
    files["motivic_ts_pairs.json"] = [list(p) for p in MOTIVIC_TS_PAIRS]
    return files


def dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# loaders

def load_structure(name):
    return LInfinityStructure.from_json(load_json("structure_%s.json" % name))


def load_structures():
    return {n: load_structure(n) for n in load_json("structure_index.json")}


def load_dgla():
    return {n: load_structure(n) for n in load_json("dgla_index.json")}


def load_germs():
    return {g["name"]: FormalPowerSeries.from_json(g["f"]) for g in load_json("germs.json")}


def load_resolutions():
    out = {}
    for r in load_json("resolutions.json"):
        out[r["name"]] = (ResolutionDatum.from_json(r), FormalPowerSeries.from_json(r["germ"]))
    return out


def load_js_grid():
    out = []
    for e in load_json("js_grid.json"):
        out.append((e["name"], ExtProfile.from_json(e["profile"]),
                    FormalPowerSeries.from_json(e["f1"]), FormalPowerSeries.from_json(e["f2"]),
                    BlockPotential.from_json(e["mixed"])))
    return out


def load_js_formula2():
    return [(e["name"], ExtProfile.from_json(e["profile"]),
             BlockPotential.from_json(e["potential"]), e["strata21"], e["strata12"])
            for e in load_json("js_formula2.json")]


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m cyclic_linf.corpus")
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    out = Path(args.out) if args.out else data_path("")
    files = build_files()
    stale = []
    for name, obj in sorted(files.items()):
        path = out / name
        text = dumps(obj)
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
        else:
            path.write_text(text)
    if args.check and stale:
        print("stale: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""JSON case files and report dictionaries.

A case file looks like::

    {"name": "...", "group": "Z3xMu3", "h": 2,
     "ab_images": ["e", "t", "1", "1"], "gamma_images": [],
     "monE": "preset", "expected": {"K_order": 9}}

``group`` is a preset name or ``{"r": 3, "lattice": [[1, -1], [1, 2]],
"names": {"t": [1, 0]}}`` with the lattice given by its columns. Elements
are expressions in the group's names (``"t*e^2"``) or ``{"t": [a, b], "k": k}``.
"""

import json

from .catalog import CatalogEntry
from .elliptic import EllipticGroup, EllipticGroupSpec, GElement, preset
from .invariants import aut_z_report, h1_S, trivial_action_subgroup
from .monodromy import (MONE_PRESETS, EllipticBranchDatum, MonodromyDatum, classify,
                        genus_C, validate, validate_branch)


class CaseFileError(ValueError):
    """A malformed case file; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


EXPECTED_KEYS = ("case", "genus_C", "K_order", "h1_S", "autz_order", "certainty")


class Case:
    def __init__(self, name, datum, branch, expected=None, source=None):
        self.name = name
        self.datum = datum
        self.branch = branch
        self.expected = dict(expected or {})
        self.source = source


def _group(obj):
    if isinstance(obj, str):
        try:
            return preset(obj)
        except ValueError as exc:
            raise CaseFileError("group", str(exc)) from None
    if isinstance(obj, dict) and "preset" in obj:
        return _group(obj["preset"])
    if not isinstance(obj, dict) or "r" not in obj or "lattice" not in obj:
        raise CaseFileError("group", "expected a preset name or {r, lattice}")
    cols = obj["lattice"]
    if not (isinstance(cols, list) and len(cols) == 2 and all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c) for c in cols)):
        raise CaseFileError("group.lattice", "expected two integer columns [[a, b], [c, d]]")
    spec = EllipticGroupSpec.from_columns(obj["r"], *cols)
    G = EllipticGroup(spec)
    for name, v in obj.get("names", {}).items():
        G.names[name] = G.translation(tuple(v))
    return G


def _element(G, obj, field):
    try:
        if isinstance(obj, str):
            return G.parse(obj)
        if isinstance(obj, dict):
            t = obj.get("t", [0, 0])
            return GElement(G.spec.reduce(tuple(t)), int(obj.get("k", 0)) % G.r)
        if isinstance(obj, list) and len(obj) == 2:
            return GElement(G.spec.reduce(tuple(obj[0])), int(obj[1]) % G.r)
    except (TypeError, ValueError) as exc:
        raise CaseFileError(field, str(exc)) from None
    raise CaseFileError(field, f"cannot read element {obj!r}")


def _elements(G, seq, field):
    if not isinstance(seq, list):
        raise CaseFileError(field, "expected a list")
    return tuple(_element(G, x, f"{field}[{i}]") for i, x in enumerate(seq))


def case_from_dict(obj, source=None) -> Case:
    if not isinstance(obj, dict):
        raise CaseFileError("<root>", "expected an object")
    for key in ("group", "h", "ab_images"):
        if key not in obj:
            raise CaseFileError(key, "missing")
    G = _group(obj["group"])
    h = obj["h"]
    if not isinstance(h, int) or h < 0:
        raise CaseFileError("h", "expected a nonnegative integer")
    ab = _elements(G, obj["ab_images"], "ab_images")
    gam = _elements(G, obj.get("gamma_images", []), "gamma_images")
    orders = obj.get("gamma_orders")
    d = MonodromyDatum(G, h, ab, gam, None if orders is None else tuple(orders))
    mone = obj.get("monE", "preset")
    if mone == "preset":
        if G.preset_name not in MONE_PRESETS:
            raise CaseFileError("monE", "no preset branch datum for this group; list the images")
        mone = list(MONE_PRESETS[G.preset_name])
    e = EllipticBranchDatum(G, _elements(G, mone, "monE"))
    expected = obj.get("expected", {})
    unknown = sorted(set(expected) - set(EXPECTED_KEYS))
    if unknown:
        raise CaseFileError("expected", f"unknown keys {unknown}")
    if "h1_S" in expected and not (isinstance(expected["h1_S"], dict)
                                   and set(expected["h1_S"]) <= {"free_rank", "torsion"}):
        raise CaseFileError("expected.h1_S", "expected an object with free_rank and/or torsion")
    return Case(obj.get("name", source or "case"), d, e, expected, source)


def load_case(path) -> Case:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CaseFileError("<file>", f"invalid JSON: {exc}") from None
    return case_from_dict(obj, str(path))


def catalog_case_dict(c: CatalogEntry):
    expected = {"case": c.tag, "K_order": c.expected_count, "autz_order": c.expected_autz_order,
                "certainty": c.expected_certainty}
    if c.expected_torsion is not None:
        expected["h1_S"] = {"torsion": list(c.expected_torsion)}
    return {"name": c.label, "group": c.group, "h": c.h, "ab_images": list(c.ab),
            "gamma_images": list(c.gammas), "monE": "preset", "expected": expected}


# -- reports -------------------------------------------------------------------

def _fmt(G, g):
    return G.format(g)


def invariants_dict(inv):
    return {"free_rank": inv.free_rank, "torsion": list(inv.torsion)}


def analyze(case: Case):
    """Run the full pipeline; returns a JSON-ready report."""
    d, e = case.datum, case.branch
    validate(d)
    validate_branch(e)
    G = d.group
    label = classify(d)
    trivial = trivial_action_subgroup(d)
    h1 = h1_S(d, e)
    rep = aut_z_report(d, e, trivial=trivial, h1=h1)
    report = {
        "name": case.name,
        "input": {"group": G.preset_name or repr(G), "datum": d.format(), "type": d.type_string(),
                  "monE": e.format()},
        "genus_C": genus_C(d),
        "case": label.tag,
        "minimal": label.minimal,
        "K_order": trivial.order,
        "K": [_fmt(G, g) for g in trivial.elements],
        "h1_S": invariants_dict(h1),
        "aut_z": {"order": rep.C_order, "elements": [_fmt(G, g) for g in rep.C],
                  "structure": str(rep.C_structure), "certainty": rep.certainty,
                  "rules": list(rep.rules)},
    }
    report["checks"] = compare(report, case.expected)
    return report


def compare(report, expected):
    """Per-key pass/fail against an ``expected`` block."""
    out = {}
    for key, want in sorted(expected.items()):
        if key == "case":
            got = report["case"]
        elif key == "genus_C":
            got = report["genus_C"]
        elif key == "K_order":
            got = report["K_order"]
        elif key == "autz_order":
            got = report["aut_z"]["order"]
        elif key == "certainty":
            got = report["aut_z"]["certainty"]
        else:
            got = {k: report["h1_S"][k] for k in want}
        out[key] = {"expected": want, "actual": got, "ok": got == want}
    return out


def report_passed(report):
    return all(c["ok"] for c in report["checks"].values())


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

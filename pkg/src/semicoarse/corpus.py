"""Golden-value checks over the bundled fixture corpus."""

from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .errors import SemiCoarseError
from .generators import random_connected_graph, random_rewrite, random_string
from .homotopy import homotopic_ray, object_equal, pi1_classes, simd_equiv
from .serialize import Fixture, parse_fixture, string_to_json, zmap_to_json
from .splitting import well_split
from .strings import (
    apply_merge,
    cut_point,
    identity_string,
    make_string,
    normalize,
    reverse_string,
    star,
    string_equiv,
)
from .vankampen import decompose, factorize, relation_preservation_test, verify_cover_hypotheses
from .zmap import eventually_equal, reverse


def _error_name(exc: Exception) -> str:
    return type(exc).__name__


def _string(fx: Fixture, name):
    if isinstance(name, list):
        return make_string([fx.zmaps[m] for m in name])
    return fx.strings[name]


def _status(v) -> str:
    return v.status.value


def check_wellsplit(fx, args):
    report = well_split(fx.cover)
    conditions = sorted({f["failed_condition"] for f in report.failures})
    out = {"verdict": report.verdict, "failed_conditions": conditions}
    excluded = [e for e in fx.space.edge_list() if frozenset(e) not in report.pushout_edges]
    out["excluded_edges"] = [list(e) for e in excluded]
    return out


def check_zmap_relation(fx, args):
    f, g = fx.zmaps[args["f"]], fx.zmaps[args["g"]]
    rel = args["relation"]
    if rel == "eventually_equal":
        return eventually_equal(f, g)
    if rel == "object_equal":
        return _status(object_equal(f, g))
    if rel == "homotopic_ray":
        return _status(homotopic_ray(f, g))
    if rel == "moves":
        return _status(simd_equiv(f, g, args.get("bound", 64)))
    if rel == "reverse_equal":
        return reverse(f) == g
    raise ValueError(f"unknown relation {rel!r}")


def check_string_valid(fx, args):
    try:
        _string(fx, args["string"])
    except SemiCoarseError as exc:
        return _error_name(exc)
    return "valid"


def check_merge_chain(fx, args):
    F = _string(fx, args["string"])
    try:
        for i, j in args["steps"]:
            F = apply_merge(F, i, j)
    except SemiCoarseError as exc:
        return _error_name(exc)
    return [zmap_to_json(m) for m in F.maps]


def check_string_equal(fx, args):
    return _status(string_equiv(_string(fx, args["F"]), _string(fx, args["G"]), args.get("bound", 64)))


def check_normal_form(fx, args):
    nf, _ = normalize(_string(fx, args["string"]))
    return [zmap_to_json(m) for m in nf.maps]


def check_groupoid_laws(fx, args):
    F = _string(fx, args["string"])
    laws = {
        "inverse": string_equiv(star(F, reverse_string(F)), make_string([F.maps[0], reverse(F.maps[0])])),
        "left_identity": string_equiv(star(identity_string(F.left_object), F), F),
        "right_identity": string_equiv(star(F, identity_string(F.right_object)), F),
    }
    return {k: _status(v) for k, v in laws.items()}


def check_pi1(fx, args):
    res = pi1_classes(fx.space, args["basepoint"], args["cap"], with_products=False)
    return {"count": res["count"], "stable": res["stabilization_flag"]}


def check_cut(fx, args):
    u, v = fx.zmaps[args["u"]], fx.zmaps[args["v"]]
    return {"cuttable": cut_point(u, v) is not None}


def check_cover_hypotheses(fx, args):
    return {"ok": verify_cover_hypotheses(fx.cover, fx.atlas)["ok"]}


def check_factorize(fx, args):
    try:
        fac = factorize(fx.zmaps[args["f"]], fx.cover)
    except SemiCoarseError as exc:
        return _error_name(exc)
    sides = [fx.cover.side_of(set(m.values) | {m.left.value, m.right.value}) for m in fac.string.maps]
    return {"factors": len(fac.string), "sides": sides, "inserted": list(fac.splice_values)}


def check_decompose(fx, args):
    try:
        word = decompose(_string(fx, args["string"]), fx.cover, fx.atlas)
    except SemiCoarseError as exc:
        return _error_name(exc)
    return {"tags": word.tags(), "lengths": [len(F) for F, _ in word.factors]}


def check_preserve(fx, args):
    move = tuple(fx.zmaps[x] if isinstance(x, str) and x in fx.zmaps and k > 1 else x
                 for k, x in enumerate(args["move"]))
    try:
        return _status(relation_preservation_test(_string(fx, args["string"]), move, fx.cover, fx.atlas))
    except SemiCoarseError as exc:
        return _error_name(exc)


CHECKS = {
    "wellsplit": check_wellsplit,
    "zmap_relation": check_zmap_relation,
    "string_valid": check_string_valid,
    "merge_chain": check_merge_chain,
    "string_equal": check_string_equal,
    "normal_form": check_normal_form,
    "groupoid_laws": check_groupoid_laws,
    "pi1": check_pi1,
    "cut": check_cut,
    "cover_hypotheses": check_cover_hypotheses,
    "factorize": check_factorize,
    "decompose": check_decompose,
    "preserve": check_preserve,
}


def _matches(expected, observed) -> bool:
    """Dict expectations constrain only the keys they name."""
    if isinstance(expected, dict) and isinstance(observed, dict):
        return all(k in observed and _matches(v, observed[k]) for k, v in expected.items())
    return expected == observed


def _resolve(fx: Fixture, expect):
    """Expectations may name fixture maps ({"maps": [...]}) instead of spelling out descriptors."""
    if isinstance(expect, dict) and set(expect) == {"maps"}:
        return [zmap_to_json(fx.zmaps[m]) for m in expect["maps"]]
    return expect


def run_fixture(fx: Fixture) -> list:
    rows = []
    for entry in fx.expected:
        check = CHECKS.get(entry["check"])
        expect = _resolve(fx, entry.get("expect"))
        if check is None:
            observed, ok = f"unknown check {entry['check']!r}", False
        else:
            try:
                observed = check(fx, entry.get("args", {}))
            except SemiCoarseError as exc:
                observed = _error_name(exc)
            ok = _matches(expect, observed)
        rows.append({"fixture": fx.name, "check": entry["check"], "reference": entry.get("reference", fx.name),
                     "provenance": entry["provenance"], "pass": ok,
                     **({} if ok else {"expected": expect, "observed": observed})})
    return rows


def bundled_corpus() -> Path:
    return Path(str(resources.files("semicoarse") / "corpus"))


def load_corpus(directory: Path | None = None) -> list:
    directory = bundled_corpus() if directory is None else Path(directory)
    return [parse_fixture(p.read_text(encoding="utf-8")) for p in sorted(directory.glob("*.json"))]


def random_law_sample(seed: int, count: int = 10) -> list:
    """Seeded groupoid-law spot checks; the corpus report includes them for determinism checks."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        space = random_connected_graph(rng)
        F = random_string(rng, space)
        G = random_string(rng, space)
        rewrite = random_rewrite(rng, F)
        row = {"sample": k, "string": string_to_json(F)}
        try:
            FG = star(F, G)
            row["inverse"] = _status(string_equiv(star(F, reverse_string(F)),
                                                  make_string([F.maps[0], reverse(F.maps[0])])))
            if rewrite is not None:
                row["rewrite"] = rewrite[0][0]
                row["rewrite_invariance"] = _status(string_equiv(FG, star(rewrite[1], G)))
        except SemiCoarseError as exc:
            row["error"] = _error_name(exc)
        out.append(row)
    return out


def corpus_run(directory: Path | None = None, seed: int = 0, samples: int = 10) -> dict:
    fixtures = load_corpus(directory)
    rows = [r for fx in fixtures for r in run_fixture(fx)]
    summary = {}
    for r in rows:
        s = summary.setdefault(r["reference"], {"pass": 0, "fail": 0})
        s["pass" if r["pass"] else "fail"] += 1
    report = {"fixtures": len(fixtures), "checks": len(rows), "failures": sum(not r["pass"] for r in rows),
              "summary": summary, "results": rows, "seed": seed,
              "random_sample": random_law_sample(seed, samples)}
    if not fixtures:
        report["warning"] = "corpus directory holds no fixtures"
    return report

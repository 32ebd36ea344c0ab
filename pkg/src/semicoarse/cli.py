"""Command-line entry point ``scg``.

Exit codes: 0 proved or verified, 1 refuted or failed, 2 unknown, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ResourceCap, SemiCoarseError
from .homotopy import object_equal, pi1_classes, simd_equiv
from .serialize import Fixture, dumps, parse_fixture, space_to_json, string_to_json
from .space import components, is_coarse
from .splitting import well_split
from .strings import cut_point, make_string, normalize, pi1_embedding, star, string_equiv, verify_equiv_certificate
from .vankampen import (
    decompose,
    factorize,
    relation_preservation_test,
    verify_cover_hypotheses,
)
from .zmap import eventually_equal

EXIT = {"PROVED": 0, "REFUTED": 1, "UNKNOWN": 2}
INVALID = 3


class UsageError(Exception):
    pass


def _load(args) -> Fixture:
    if not args.input:
        raise UsageError("--in FILE is required")
    return parse_fixture(Path(args.input).read_text(encoding="utf-8"))


def _pick(table: dict, names, what: str, count: int) -> list:
    if names:
        missing = [n for n in names if n not in table]
        if missing:
            raise UsageError(f"unknown {what} {missing}")
        return [table[n] for n in names]
    if len(table) < count:
        raise UsageError(f"the fixture needs at least {count} {what}")
    return list(table.values())[:count]


def _verdict(v, **extra) -> tuple[int, dict]:
    report = {"verdict": v.status.value, **extra}
    if v.reason:
        report["reason"] = v.reason
    if v.certificate is not None:
        report["certificate"] = v.certificate
    return EXIT[v.status.value], report


# ------------------------------------------------------------------ commands

def cmd_space_check(args):
    fx = _load(args)
    sp = fx.space
    report = {"space": space_to_json(sp), "valid": True}
    if hasattr(sp, "vertices"):
        report["components"] = len(components(sp))
        report["coarse"] = is_coarse(sp)
    return 0, report


def cmd_space_build(args):
    return 0, space_to_json(_load(args).space)


def cmd_wellsplit(args):
    fx = _load(args)
    if fx.cover is None:
        raise UsageError("the fixture has no cover")
    report = well_split(fx.cover).to_json()
    return (0 if report["verdict"] else 1), report


def cmd_homotopy(args):
    fx = _load(args)
    f, g = _pick(fx.zmaps, args.names, "zmaps", 2)
    v = simd_equiv(f, g, args.bound)
    return _verdict(v, relation="add/delete moves")


def cmd_pi1(args):
    fx = _load(args)
    base = _basepoint(fx, args.basepoint)
    res = pi1_classes(fx.space, base, args.length_cap)
    return 0, {"basepoint": base, "length_cap": args.length_cap, **res}


def _basepoint(fx, raw):
    if raw is None:
        return fx.space.vertices[0]
    for v in fx.space.vertices:
        if str(v) == raw:
            return v
    raise UsageError(f"unknown basepoint {raw!r}")


def cmd_zmap_eq(args):
    fx = _load(args)
    f, g = _pick(fx.zmaps, args.names, "zmaps", 2)
    return _verdict(object_equal(f, g), eventually_equal=eventually_equal(f, g))


def _strings(fx, names, count):
    return _pick(fx.strings, names, "strings", count)


def cmd_string_normalize(args):
    fx = _load(args)
    (F,) = _strings(fx, args.names, 1)
    nf, trace = normalize(F)
    return 0, {"normal_form": string_to_json(nf), "trace": [list(s) for s in trace]}


def cmd_string_equal(args):
    fx = _load(args)
    F, G = _strings(fx, args.names, 2)
    v = string_equiv(F, G, args.bound)
    extra = {}
    if v.proved:
        extra["replayed"] = verify_equiv_certificate(F, G, v.certificate)
    return _verdict(v, **extra)


def cmd_string_star(args):
    fx = _load(args)
    F, G = _strings(fx, args.names, 2)
    return 0, {"string": string_to_json(star(F, G))}


def cmd_groupoid_embed(args):
    fx = _load(args)
    base = _basepoint(fx, args.basepoint)
    res = pi1_classes(fx.space, base, args.length_cap, with_products=False)
    images = [string_to_json(pi1_embedding(fx.space, base, c["representative"])) for c in res["classes"]]
    return 0, {"basepoint": base, "classes": res["count"], "images": images}


def cmd_groupoid_eliminable(args):
    fx = _load(args)
    names = args.names or list(fx.zmaps)
    rows = []
    for a in names:
        for b in names:
            rows.append({"u": a, "v": b, "cuttable": cut_point(fx.zmaps[a], fx.zmaps[b]) is not None})
    return 0, {"pairs": rows}


def _cover(fx):
    if fx.cover is None:
        raise UsageError("the fixture has no cover")
    return fx.cover


def _atlas(fx):
    if fx.atlas is None:
        raise UsageError("the fixture has no atlas")
    return fx.atlas


def cmd_vk_verify_cover(args):
    fx = _load(args)
    report = verify_cover_hypotheses(_cover(fx), _atlas(fx))
    return (0 if report["ok"] else 1), report


def cmd_vk_factorize(args):
    fx = _load(args)
    (f,) = _pick(fx.zmaps, args.names, "zmaps", 1)
    fac = factorize(f, _cover(fx))
    v = string_equiv(make_string([f]), fac.string, args.bound)
    return _verdict(v, factors=string_to_json(fac.string), trace=[list(s) for s in fac.trace],
                    inserted=list(fac.splice_values))


def cmd_vk_decompose(args):
    fx = _load(args)
    (F,) = _strings(fx, args.names, 1)
    word = decompose(F, _cover(fx), _atlas(fx))
    return 0, {"factors": [{"tag": t, "string": string_to_json(G)} for G, t in word.factors]}


def cmd_vk_preserve(args):
    fx = _load(args)
    (F,) = _strings(fx, args.names, 1)
    if not args.move:
        raise UsageError("--move is required")
    raw = json.loads(args.move)
    move = tuple(fx.zmaps.get(x, x) if isinstance(x, str) and k > 1 else x for k, x in enumerate(raw))
    v = relation_preservation_test(F, move, _cover(fx), _atlas(fx), args.bound)
    return _verdict(v, move=raw)


def cmd_corpus_run(args):
    from .corpus import corpus_run
    report = corpus_run(args.dir, seed=args.seed)
    return (0 if report["failures"] == 0 else 1), report


def cmd_oracle(args):
    from .oracle import write_pi1_fixtures
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    written = write_pi1_fixtures(out, log=lambda m: print(m, file=sys.stderr))
    return 0, {"written": written}


COMMANDS = {
    ("space", "check"): cmd_space_check,
    ("space", "build"): cmd_space_build,
    ("wellsplit",): cmd_wellsplit,
    ("homotopy",): cmd_homotopy,
    ("pi1",): cmd_pi1,
    ("zmap", "eq"): cmd_zmap_eq,
    ("string", "normalize"): cmd_string_normalize,
    ("string", "equal"): cmd_string_equal,
    ("string", "star"): cmd_string_star,
    ("groupoid", "embed"): cmd_groupoid_embed,
    ("groupoid", "eliminable"): cmd_groupoid_eliminable,
    ("vk", "verify-cover"): cmd_vk_verify_cover,
    ("vk", "factorize"): cmd_vk_factorize,
    ("vk", "decompose"): cmd_vk_decompose,
    ("vk", "preserve"): cmd_vk_preserve,
    ("corpus", "run"): cmd_corpus_run,
    ("oracle",): cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scg", description="Semi-coarse homotopy toolkit.")
    p.add_argument("command", nargs="+", help="command words, e.g. 'string equal' or 'wellsplit'")
    p.add_argument("--in", dest="input", help="fixture JSON file")
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--length-cap", type=int, default=12)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", dest="names", action="append", help="pick named maps or strings (repeatable)")
    p.add_argument("--basepoint")
    p.add_argument("--move", help="JSON move, e.g. '[\"d\", 0, 1]'")
    p.add_argument("--dir", help="corpus directory (defaults to the bundled corpus)")
    p.add_argument("--out", help="output directory for 'oracle'")
    return p


def _text(report, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for k in sorted(report):
            v = report[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{report}")
    return "\n".join(lines)


def run_command(argv) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return INVALID, {"error": "usage", "message": "could not parse arguments"}
    handler = COMMANDS.get(tuple(args.command))
    if handler is None:
        return INVALID, {"error": "usage", "message": f"unknown command {' '.join(args.command)!r}"}
    try:
        return handler(args)
    except UsageError as exc:
        return INVALID, {"error": "usage", "message": str(exc)}
    except (OSError, json.JSONDecodeError) as exc:
        return INVALID, {"error": type(exc).__name__, "message": str(exc)}
    except ResourceCap as exc:
        return EXIT["UNKNOWN"], {"verdict": "UNKNOWN", "reason": str(exc)}
    except SemiCoarseError as exc:
        out = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "location", None):
            out["location"] = exc.location
        return INVALID, out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")
    known, _ = fmt.parse_known_args(argv)
    text = dumps(report)
    sys.stdout.write(text if known.format == "json" else _text(json.loads(text)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

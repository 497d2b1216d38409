"""Command line front end: arrangeo <command> <file> [options]."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Optional, Sequence

from .errors import ArrangeoError, MalformedInput, NotApplicable, ValidationFailed
from .finite import ORACLE_NAMES, count_homs, named_group
from .geometry import (
    Arrangement,
    intersection_lattice,
    parse_arrangement,
    singular_points,
    validate,
)
from .graph import build_graph, cfg_check_cl, cfg_check_line, emit_dot
from .pipeline import move_basepoint, presentation_of
from .presentation import abelianization
from .simplify import DEFAULT_BUDGET, simplify_to_cf
from .structure import DECOMPOSED, check_cl_identity, predict_cf, split_multiplicities
from .words import format_word

COMMANDS = ("validate", "lattice", "monodromy", "pi1", "simplify", "graph", "cfg", "structure", "verify")


class Usage(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrangeo", description="Fundamental groups of real line and conic-line arrangements.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="arrangement JSON file ('-' for stdin)")
    p.add_argument("--basepoint", default=None, help="EVT:left|right, e.g. 3:left")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="rewrite budget for simplify")
    p.add_argument("--oracle", default="S3,S4", help="comma separated finite targets")
    p.add_argument("--format", choices=("json", "text", "dot"), default=None)
    p.add_argument("--no-shear", action="store_true", help="do not shear to a generic projection")
    return p


def _parse_basepoint(text: Optional[str]) -> Optional[tuple[int, str]]:
    if text is None:
        return None
    evt, _, side = text.partition(":")
    if not evt.isdigit() or side not in ("left", "right"):
        raise Usage(f"--basepoint expects EVT:left|right, got {text!r}")
    return int(evt), side


def _parse_oracles(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in ORACLE_NAMES]
    if bad:
        raise Usage(f"unknown oracle target(s) {bad}; choose from {list(ORACLE_NAMES)}")
    return names


def _read(path: str) -> Arrangement:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    return parse_arrangement(text)


def _fingerprint(aut) -> str:
    text = "|".join(format_word(w) for w in aut.images)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _presentation(arr: Arrangement, args):
    mono, p = presentation_of(arr, shear=not args.no_shear)
    bp = _parse_basepoint(args.basepoint)
    if bp is not None:
        if not 1 <= bp[0] <= len(mono.events):
            raise Usage(f"--basepoint: no event x{bp[0]} (the arrangement has {len(mono.events)})")
        p = move_basepoint(p, mono, *bp)
    return mono, p


def _cmd_validate(arr, args) -> tuple[str, int]:
    rep = validate(arr)
    if args.format == "text":
        lines = ["ok" if rep.ok else "invalid"]
        lines += [f"{v.kind}: {', '.join(v.components)} {v.detail}".rstrip() for v in rep.violations]
        return "\n".join(lines) + "\n", 0 if rep.ok else 1
    return _dump(rep.to_json()), 0 if rep.ok else 1


def _cmd_lattice(arr, args) -> tuple[str, int]:
    rep = validate(arr)
    if not rep.ok:
        raise ValidationFailed(rep)
    pts = singular_points(arr)
    out = {"points": [p.to_json() for p in pts], "lattice": [list(c) for c in intersection_lattice(arr)]}
    return _dump(out), 0


def _cmd_monodromy(arr, args) -> tuple[str, int]:
    mono, _ = presentation_of(arr, shear=not args.no_shear)
    events = []
    for ev in mono.events:
        d = ev.to_json()
        d["fingerprint"] = _fingerprint(mono.composed_delta(ev))
        d["words"] = [format_word(w) for w in mono.transport(ev)]
        events.append(d)
    stops = [{"kind": s.kind, "x": s.x.to_json(), "detail": s.detail} for s in mono.stops if s.kind != "event"]
    out = {
        "shear": str(mono.arrangement.shear),
        "fiber": list(mono.fiber.slots),
        "events": events,
        "transparent_and_frame_stops": stops,
    }
    return _dump(out), 0


def _cmd_pi1(arr, args) -> tuple[str, int]:
    _, p = _presentation(arr, args)
    if args.format == "json":
        return _dump(p.to_json()), 0
    return p.format(), 0


def _cmd_simplify(arr, args) -> tuple[str, int]:
    if args.budget < 0:
        raise Usage("--budget must be >= 0")
    _, p = _presentation(arr, args)
    v = simplify_to_cf(p, args.budget)
    if args.format == "text":
        return f"status {v.status}\n" + (f"reason {v.reason}\n" if v.reason else "") + v.presentation.format(), 0
    return _dump(v.to_json()), 0


def _graph(arr):
    if len(arr.conics) <= 1:
        rep = validate(arr)
        if not rep.ok:
            raise ValidationFailed(rep)
    return build_graph(arr)


def _cmd_graph(arr, args) -> tuple[str, int]:
    g = _graph(arr)
    if args.format == "json":
        return _dump(g.to_json()), 0
    return emit_dot(g), 0


def _cmd_cfg(arr, args) -> tuple[str, int]:
    g = _graph(arr)
    v = cfg_check_line(g) if not arr.conics else cfg_check_cl(g)
    return _dump(v.to_json()), 0


def _structure_input_ok(arr: Arrangement) -> None:
    rep = validate(arr)
    if rep.ok:
        return
    if len(arr.conics) == 2 and rep.kinds() == {"TooManyConics"}:
        return  # two conics are handled combinatorially
    raise ValidationFailed(rep)


def _cmd_structure(arr, args) -> tuple[str, int]:
    _structure_input_ok(arr)
    return _dump(predict_cf(arr).to_json()), 0


def _cmd_verify(arr, args) -> tuple[str, int]:
    oracles = _parse_oracles(args.oracle)
    mono, p = _presentation(arr, args)
    checks = []
    ab = abelianization(p)
    ncomp = len(arr.lines) + len(arr.conics)
    checks.append({"check": "abelianization rank = number of components",
                   "expected": ncomp, "got": ab.rank, "ok": ab.rank == ncomp and not ab.torsion})
    verdict = predict_cf(arr)
    if verdict.outcome == DECOMPOSED:
        s = verdict.structure
        if arr.conics:
            on, off = split_multiplicities(arr)
            ok = verdict.identities_checked
            if s.theorem.startswith("conic-line"):
                ok = ok and check_cl_identity(len(arr.lines), s.r, on, off)
        else:
            ok = s.r + sum(s.free_ranks) == len(arr.lines)
        checks.append({"check": "rank identity", "ok": bool(ok)})
        canon = s.canonical()
        for name in oracles:
            g = named_group(name)
            a, b = count_homs(p, g), count_homs(canon, g)
            checks.append({"check": f"hom count into {name} (computed vs {s})", "expected": b, "got": a, "ok": a == b})
    simp = simplify_to_cf(p, args.budget)
    out = {
        "structure": verdict.to_json(),
        "simplify": simp.status,
        "checks": checks,
        "all_passed": all(c["ok"] for c in checks),
    }
    if args.format == "text":
        lines = [f"{'PASS' if c['ok'] else 'FAIL'} {c['check']}" for c in checks]
        lines.append(f"structure {verdict.outcome} {verdict.structure or ''}".rstrip())
        lines.append(f"simplify {simp.status}")
        return "\n".join(lines) + "\n", 0
    return _dump(out), 0


_HANDLERS = {
    "validate": _cmd_validate,
    "lattice": _cmd_lattice,
    "monodromy": _cmd_monodromy,
    "pi1": _cmd_pi1,
    "simplify": _cmd_simplify,
    "graph": _cmd_graph,
    "cfg": _cmd_cfg,
    "structure": _cmd_structure,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one command; returns (exit status, stdout text, stderr text)."""
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:
        return (2 if exc.code else 0), "", ""
    try:
        arr = _read(args.file)
        text, code = _HANDLERS[args.command](arr, args)
        return code, text, ""
    except (MalformedInput, Usage) as exc:
        return 2, "", f"error: {type(exc).__name__}: {exc}\n"
    except ValidationFailed as exc:
        return 1, _dump(exc.report.to_json()), f"error: {exc}\n"
    except NotApplicable as exc:
        return 0, _dump({"outcome": "NotApplicable", "reason": str(exc)}), ""
    except ArrangeoError as exc:
        return 1, "", f"error: {type(exc).__name__}: {exc}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

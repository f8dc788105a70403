"""Command line: ``fraisse {check,build,verify,iso,game,tournament,ubiquity}``.

Exit codes: 0 Holds, 1 Fails, 2 unknown within bound, 3 a library error
(its code is in the report), 64 usage error. Every report carries the tool
version, the configuration, input file hashes and ``report_hash``, a digest
of everything except the timestamp.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import FraisseError
from .io import digest, encode, file_hash, load_sequence, save_play, save_sequence
from .verdict import Status, Verdict

EXIT_ERROR, EXIT_USAGE = 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _category(ref: str):
    from .instances.builtin import builtin_category

    return builtin_category(ref)


def _find_object(cat, name: str, bound: int):
    if name.startswith("{"):
        return cat.object_from_payload(json.loads(name))
    pool = cat.objects() if cat.finite else cat.objects(bound + 2)
    for x in pool:
        if name in (str(x), cat.object_id(x), cat.describe(x)):
            return x
    raise UsageError(f"no object named {name!r} in {cat.name}")


def _verdict_result(cat, v: Verdict) -> dict:
    out = v.summary()
    if v.counterexample is not None:
        out["counterexample"] = encode(cat, v.counterexample)
    return out


# -- subcommands -------------------------------------------------------------

def cmd_check(args):
    from .amalgamation import ap_at, check_subcategory, has_cap, has_wap, is_amalgamable

    cat = _category(args.category)
    if args.prop in ("ap", "amalgamable") and not args.object:
        raise UsageError(f"--prop {args.prop} needs --object")
    if args.prop == "ap":
        v = ap_at(cat, _find_object(cat, args.object, args.bound), args.bound)
    elif args.prop == "amalgamable":
        v = is_amalgamable(cat, cat.identity(_find_object(cat, args.object, args.bound)), args.bound)
    elif args.prop == "cap":
        v = has_cap(cat, args.bound)
    elif args.prop == "wap":
        v = has_wap(cat, args.bound)
    else:
        if not args.sub:
            raise UsageError("--prop sub needs --sub")
        v = check_subcategory(cat, _category(args.sub), args.mode, args.bound)
    return v.status, _verdict_result(cat, v), {}


def cmd_build(args):
    from .engine.builder import build_weak_fraisse

    cat = _category(args.category)
    seq = build_weak_fraisse(cat, args.steps, seed=args.seed, bound=args.bound)
    result = {"stages": len(seq), "sizes": [cat.size(x) for x in seq.objects],
              "ledger": len(seq.ledger), "free": sum(1 for e in seq.ledger if e.get("free"))}
    if args.out:
        save_sequence(seq, args.out)
        result["out"] = Path(args.out).name
    return Status.HOLDS, result, {}


def cmd_verify(args):
    from .engine.colimit import ColimitApprox, check_generic
    from .engine.verify import verify_wf

    seq = load_sequence(args.seq)
    cat = seq.category
    report = verify_wf(seq, args.depth, args.bound)
    result = {"wf": report.verdict.summary(), "missing_g1": encode(cat, report.missing_g1),
              "missing_g2": report.missing_g2,
              "g2_lags": {str(n): e["m"] - n for n, e in report.g2.items()}}
    status = report.verdict.status
    if cat.concrete and not getattr(cat, "dual", False):
        # genericity is judged on the stages whose (G2) obligations were verified
        V = ColimitApprox(seq, window=min(args.depth, 6))
        g = check_generic(cat, V, args.bound)
        result["generic"] = _verdict_result(cat, g)
        if status is Status.HOLDS and not g.ok:
            status = g.status
    return status, result, {"seq": file_hash(args.seq)}


def cmd_iso(args):
    from .engine.iso import isomorphic_prefix

    u, v = load_sequence(args.a), load_sequence(args.b)
    nu, nv, iso = isomorphic_prefix(u, v, args.depth, grow=True)
    check = iso.verify(nu, nv)
    result = {"depth": args.depth, "k": iso.k, "l": iso.l, "equations": check.status.value}
    if args.out:
        Path(args.out).write_text(json.dumps(iso.to_dict(nu.category), indent=1) + "\n", encoding="utf-8")
        result["out"] = Path(args.out).name
    return check.status, result, {"a": file_hash(args.a), "b": file_hash(args.b)}


def _eve(spec: str, cat, inputs):
    from .engine.colimit import colimit_approx, find_spoil_certificate
    from .errors import NoSpoilCertificate
    from .game import strategies as S

    if spec == "random":
        return S.RandomEve(cat), None
    # vertices per Eve move, so baseline plays stay inside subcategories like even graphs
    step = getattr(cat, "extension_step", 1)
    if spec == "cliques":
        return S.CliquesEve(step), None
    if spec == "paths":
        return S.PathsEve(step), None
    if spec.startswith("spoiler:"):
        path = spec.split(":", 1)[1]
        inputs["eve"] = file_hash(path)
        V = colimit_approx(load_sequence(path))
        cert = find_spoil_certificate(cat, V, 3, arrows_only=True)
        if cert is None:
            raise NoSpoilCertificate("no spoiling arrow into the target within bound")
        return S.eve_spoiler_strategy(cat, V, V.push((cert.stage, cert.e)), 3), V
    raise UsageError(f"unknown Eve strategy {spec!r}")


def _odd(spec: str, cat, inputs):
    from .game import strategies as S

    if spec == "random":
        return S.RandomOdd(cat), None
    if spec.startswith("generic:"):
        path = spec.split(":", 1)[1]
        inputs["odd"] = file_hash(path)
        u = load_sequence(path)
        return S.odd_generic_strategy(u), u
    if spec.startswith("realize:"):
        return S.RealizeCliqueOdd(int(spec.split(":", 1)[1])), None
    raise UsageError(f"unknown Odd strategy {spec!r}")


def _play_one(args, cat, seed: int):
    from .game.classify import classify_play
    from .game.play import run_game

    inputs: dict = {}
    # fresh strategies per play: the spoiler keeps a per-play ledger
    eve, eve_target = _eve(args.eve, cat, inputs)
    odd, odd_target = _odd(args.odd, cat, inputs)
    play = run_game(cat, eve, odd, args.rounds, seed=seed)
    target = odd_target if odd_target is not None else eve_target
    if args.target:
        inputs["target"] = file_hash(args.target)
        target = load_sequence(args.target)
    depth = args.depth or max(1, min(4, (args.rounds - 2) // 3))
    v = classify_play(play, target, depth) if target is not None else Verdict.unknown(
        notes=["no target to classify against"])
    result = {"rounds": play.rounds, "depth": depth, "sizes": [cat.size(x) for x in play.objects],
              "classify": v.summary()}
    if hasattr(eve, "ledger"):
        result["dagger"] = eve.ledger
    return play, v, result, inputs


def cmd_game(args):
    cat = _category(args.category)
    play, v, result, inputs = _play_one(args, cat, args.seed)
    if args.out:
        save_play(play, args.out, result=v.summary())
        result["out"] = Path(args.out).name
    return v.status, result, inputs


def cmd_tournament(args):
    cat = _category(args.category)
    seeds = range(args.seed, args.seed + args.games)
    plays, inputs = [], {}
    for seed in seeds:
        _, v, result, inputs = _play_one(args, cat, seed)
        plays.append({"seed": seed, "status": v.status.value, **result})
    statuses = [Status(p["status"]) for p in plays]
    tally = {s.value: statuses.count(s) for s in Status}
    # one failed play refutes, otherwise any unknown play makes the whole run unknown
    worst = next((s for s in (Status.FAILS, Status.UNKNOWN) if s in statuses), Status.HOLDS)
    return worst, {"games": args.games, "tally": tally, "plays": plays}, inputs


def _checker(spec: str, bound: int):
    from .engine.verify import verify_wf
    from .instances.builtin import extension_axiom_check

    if spec.startswith("extension:"):
        n = int(spec.split(":", 1)[1])

        return lambda seq: extension_axiom_check(seq[-1], n)["ok"]
    if spec == "wf":
        return lambda seq: verify_wf(seq, 1, bound).ok
    raise UsageError(f"unknown checker {spec!r}")


def cmd_ubiquity(args):
    from .game.classify import ubiquity_estimate

    cat = _category(args.category)
    report = ubiquity_estimate(cat, args.depth, _checker(args.checker, args.bound), mode=args.mode,
                               samples=args.samples, seed=args.seed, cap=args.cap)
    return Status.HOLDS, report, {}


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fraisse", description="Weak Fraisse categories, sequences and games.")
    p.add_argument("--version", action="version", version=f"fraisse {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        sp.add_argument("--report", help="write the JSON report here (default: stdout)")
        return sp

    c = add("check", cmd_check, "amalgamation properties")
    c.add_argument("--category", required=True)
    c.add_argument("--prop", required=True, choices=["ap", "amalgamable", "cap", "wap", "sub"])
    c.add_argument("--object")
    c.add_argument("--sub")
    c.add_argument("--mode", default="cofinal", choices=["cofinal", "dominating", "weakly_dominating"])
    c.add_argument("--bound", type=_positive, default=3)

    b = add("build", cmd_build, "build a weak Fraisse sequence")
    b.add_argument("--category", required=True)
    b.add_argument("--steps", type=_positive, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--bound", type=_positive, default=3)
    b.add_argument("--out")

    v = add("verify", cmd_verify, "check (G1), (G2) and genericity of a saved sequence")
    v.add_argument("--seq", required=True)
    v.add_argument("--depth", type=_positive, default=4)
    v.add_argument("--bound", type=_positive, default=3)

    i = add("iso", cmd_iso, "back-and-forth between two saved sequences")
    i.add_argument("--a", required=True)
    i.add_argument("--b", required=True)
    i.add_argument("--depth", type=_positive, default=4)
    i.add_argument("--out")

    g = add("game", cmd_game, "play the Banach-Mazur game")
    _game_args(g)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")

    t = add("tournament", cmd_tournament, "play one game per seed and tally the outcomes")
    _game_args(t)
    t.add_argument("--seed", type=int, default=0, help="first seed")
    t.add_argument("--games", type=_positive, default=10)

    u = add("ubiquity", cmd_ubiquity, "fraction of branches passing a checker")
    u.add_argument("--category", required=True)
    u.add_argument("--depth", type=_positive, default=4)
    u.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    u.add_argument("--samples", type=_positive, default=500)
    u.add_argument("--seed", type=int, default=0)
    u.add_argument("--checker", default="extension:1", help="extension:N | wf")
    u.add_argument("--bound", type=_positive, default=3)
    u.add_argument("--cap", type=_positive, default=100_000)
    return p


def _game_args(sp):
    sp.add_argument("--category", required=True)
    sp.add_argument("--eve", default="random", help="random | cliques | paths | spoiler:SEQ.json")
    sp.add_argument("--odd", default="random", help="random | generic:SEQ.json | realize:N")
    sp.add_argument("--rounds", type=_positive, default=12)
    sp.add_argument("--depth", type=_positive,
                    help="zigzag depth (default: the largest <= 4 the play length supports)")
    sp.add_argument("--target", help="sequence file to classify the play against")


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "report")}


def make_report(command: str, config: dict, inputs: dict, status, result, error=None) -> dict:
    report = {"tool": "fraisse", "version": __version__, "command": command, "config": config,
              "inputs": inputs, "status": status.value if status else None, "result": result}
    if error is not None:
        report["error"] = error
    report["report_hash"] = digest(report)
    report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return report


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help/--version exit 0, bad flags exit EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    config = _config(args)
    try:
        status, result, inputs = args.func(args)
        report = make_report(args.command, config, inputs, status, result)
        code = status.exit_code
    except UsageError as exc:
        print(f"fraisse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FraisseError, OSError, ValueError) as exc:
        code_name = exc.code if isinstance(exc, FraisseError) else "io_error"
        err = {"code": code_name, "message": str(exc)}
        report = make_report(args.command, config, {}, None, None, error=err)
        code = EXIT_ERROR
    text = json.dumps(report, indent=1, sort_keys=True, default=str) + "\n"
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line entry point.

Exit codes: 0 success, 2 domain errors, 3 size-cap refusal.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from . import oracle, shiftspace
from .errors import DomainError, SizeCapError
from .group import FiniteGroup, FreeAbelianGroup, GroupSubset, parse_group, parse_subset
from .idempotency import classify
from .order import antichain_family, chain_family, hasse, natural_leq, order_char_crosscheck
from .pattern import Pattern, enumerate_patterns
from .rule import (
    LocalRule,
    PatternCA,
    as_pattern_rule,
    from_table_string,
    minimal_memory_set,
    wolfram_number,
)


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0.1.0"


# ---------------------------------------------------------------- parsing


def load_pattern(text: str, group_spec: str = "zd:1", k: int = 2) -> tuple[Pattern, int | None]:
    """A JSON record (inline or file path) or ``STRING@DOMAIN`` shorthand."""
    text = text.strip()
    if not text.startswith("{") and "@" not in text and Path(text).exists():
        text = Path(text).read_text()
    if text.startswith("{"):
        rec = json.loads(text)
        group = parse_group(rec.get("group", group_spec))
        domain = GroupSubset(group, tuple(group.coerce(g) for g in rec["domain"]))
        return Pattern(domain, tuple(rec["values"]), int(rec.get("alphabet", k))), rec.get("write")
    if "@" not in text:
        raise DomainError(f"cannot read pattern {text!r}: expected JSON or STRING@DOMAIN")
    string, _, domain = text.partition("@")
    group = parse_group(group_spec)
    return Pattern.from_string(string, parse_subset(group, domain), k, group), None


def pattern_ca(p: Pattern, write: int | None) -> PatternCA:
    if write is None:
        if p.k != 2:
            raise DomainError("--write is required for alphabets larger than 2")
        return PatternCA.flip(p)
    return PatternCA(p, int(write))


def _pattern_from_args(args) -> tuple[Pattern, int | None]:
    text = args.pattern
    if args.domain is not None and "@" not in text and not text.lstrip().startswith("{"):
        text = f"{text}@{args.domain}"
    p, write = load_pattern(text, args.group, args.alphabet)
    return p, args.write if args.write is not None else write


def _rule_from_args(args) -> LocalRule:
    if args.table is not None:
        group = parse_group(args.group)
        if args.domain is None:
            raise DomainError("--table needs --domain")
        return from_table_string(args.table, parse_subset(group, args.domain), args.alphabet)
    p, write = _pattern_from_args(args)
    return pattern_ca(p, write).rule


def _emit(obj, args) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
        return
    if getattr(args, "report", False):
        obj = {
            "command": args.argv,
            "version": tool_version(),
            "result": obj,
        }
        if args.timings:
            obj["elapsed_s"] = round(time.perf_counter() - args.started, 6)
    print(json.dumps(obj, sort_keys=True))


def _plain(value, args) -> None:
    if args.json or getattr(args, "report", False):
        _emit({"value": value}, args)
    elif isinstance(value, bool):
        print("true" if value else "false")
    else:
        print(value)


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- commands


def cmd_classify(args) -> None:
    p, write = _pattern_from_args(args)
    _emit(classify(pattern_ca(p, write)).to_json(), args)


def table_tsv(domain: GroupSubset, k: int = 2, threads: int = 1) -> str:
    """Idempotent / non-idempotent pattern strings in two columns plus counts."""
    patterns = list(enumerate_patterns(domain, k))
    verdicts = _map(lambda p: classify(PatternCA.flip(p)).idempotent, patterns, threads)
    idem = [p.string for p, v in zip(patterns, verdicts) if v]
    non = [p.string for p, v in zip(patterns, verdicts) if not v]
    lines = [f"# domain: {domain.format()}", "idempotent\tnon-idempotent"]
    for i in range(max(len(idem), len(non))):
        left = idem[i] if i < len(idem) else ""
        right = non[i] if i < len(non) else ""
        lines.append(f"{left}\t{right}")
    lines.append(f"# counts: {len(idem)}\t{len(non)}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> None:
    if args.alphabet != 2:
        raise DomainError("the table command uses the binary complement write; use --alphabet 2")
    group = parse_group(args.group)
    _emit(table_tsv(parse_subset(group, args.domain), args.alphabet, args.threads), args)


def cmd_order(args) -> None:
    p, a = load_pattern(args.p, args.group, args.alphabet)
    q, b = load_pattern(args.q, args.group, args.alphabet)
    t1, t2 = pattern_ca(p, a), pattern_ca(q, b)
    is_z = isinstance(p.group, FreeAbelianGroup) and p.group.d == 1
    verdict = order_char_crosscheck(t1, t2) if is_z and not args.no_crosscheck else natural_leq(t1, t2)
    out = verdict.to_json()
    out["geq"] = natural_leq(t2, t1).leq
    out["comparable"] = out["leq"] or out["geq"]
    _emit(out, args)


def cmd_hasse(args) -> None:
    group = parse_group(args.group)
    if args.family == "chain":
        items = chain_family(1, args.n, group)
    elif args.family == "antichain":
        items = antichain_family(list(range(1, args.n + 1)), args.n, group)
    else:
        domain = parse_subset(group, args.domain)
        items = [t for t in map(PatternCA.flip, enumerate_patterns(domain)) if classify(t).idempotent]
    dot = hasse(items, include_identity=args.identity).to_dot()
    if args.out:
        Path(args.out).write_text(dot)
    else:
        sys.stdout.write(dot)


def cmd_shift_words(args) -> None:
    p, _ = _pattern_from_args(args)
    _plain(shiftspace.count_words(p, args.n), args)


def cmd_shift_entropy(args) -> None:
    p, _ = _pattern_from_args(args)
    res = shiftspace.entropy(p, args.tol)
    if args.json or args.report:
        _emit({"bits": res.bits, "nats": res.nats, "iterations": res.iterations}, args)
    else:
        print(f"{res.bits:.12f}\t{res.nats:.12f}")


def cmd_shift_subset(args) -> None:
    p, _ = load_pattern(args.p, args.group, args.alphabet)
    q, _ = load_pattern(args.q, args.group, args.alphabet)
    _plain(shiftspace.sft_subset(p, q), args)


def _carrier(args) -> FiniteGroup:
    group = parse_group(args.group)
    if not isinstance(group, FiniteGroup):
        raise DomainError("oracle commands need a finite carrier (cayley:...)")
    return group


def cmd_oracle_idem(args) -> None:
    G = _carrier(args)
    p, write = _pattern_from_args(args)
    t = pattern_ca(p, write)
    _emit({"global_idempotent": oracle.global_idempotent(t.rule, G), "local": classify(t).idempotent}, args)


def cmd_oracle_fix(args) -> None:
    G = _carrier(args)
    p, write = _pattern_from_args(args)
    t = pattern_ca(p, write)
    fixed = oracle.fix_set(t.rule, G)
    avoid = oracle.avoiding_set(p, G)
    _emit({"fixed": sorted(map(list, fixed)), "equals_avoiding_set": fixed == avoid}, args)


def cmd_rule_wolfram(args) -> None:
    _plain(wolfram_number(_rule_from_args(args)), args)


def cmd_rule_mms(args) -> None:
    memory, reduced = minimal_memory_set(_rule_from_args(args))
    _emit({"memory": [list(g) if isinstance(g, tuple) else g for g in memory], "table": reduced.table_string()}, args)


def cmd_rule_detect(args) -> None:
    found = as_pattern_rule(_rule_from_args(args))
    if found is None:
        _emit({"pattern": None}, args)
    else:
        p, a = found
        _emit({"pattern": p.string, "write": a, "record": p.to_json(a)}, args)


# ---------------------------------------------------------------- parser


def _common(sp, pattern: bool = True) -> None:
    sp.add_argument("--group", default="zd:1")
    sp.add_argument("--alphabet", type=int, default=2)
    sp.add_argument("--json", action="store_true")
    if pattern:
        sp.add_argument("--domain")
        sp.add_argument("--pattern", required=True, help="STRING, STRING@DOMAIN, JSON record or path")
        sp.add_argument("--write", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="idemca", description=__doc__)
    ap.add_argument("--job", help="JSON job file: {command: [...], args: {...}}")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--report", action="store_true", help="wrap JSON output in a run report")
    ap.add_argument("--timings", action="store_true", help="add elapsed time to the run report")
    sub = ap.add_subparsers(dest="command")

    sp = sub.add_parser("classify")
    _common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("table")
    _common(sp, pattern=False)
    sp.add_argument("--domain", required=True)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("order")
    _common(sp, pattern=False)
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--no-crosscheck", action="store_true")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("hasse")
    _common(sp, pattern=False)
    sp.add_argument("--domain", default="-1,0,1")
    sp.add_argument("--family", choices=["chain", "antichain", "table"], default="table")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--identity", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_hasse)

    shift = sub.add_parser("shift").add_subparsers(dest="shift_command", required=True)
    sp = shift.add_parser("words")
    _common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_shift_words)
    sp = shift.add_parser("entropy")
    _common(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_shift_entropy)
    sp = shift.add_parser("subset")
    _common(sp, pattern=False)
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=cmd_shift_subset)

    orc = sub.add_parser("oracle").add_subparsers(dest="oracle_command", required=True)
    for name, func in (("idem", cmd_oracle_idem), ("fix", cmd_oracle_fix)):
        sp = orc.add_parser(name)
        _common(sp)
        sp.set_defaults(func=func)

    rule = sub.add_parser("rule").add_subparsers(dest="rule_command", required=True)
    for name, func in (("wolfram", cmd_rule_wolfram), ("mms", cmd_rule_mms), ("detect-pattern", cmd_rule_detect)):
        sp = rule.add_parser(name)
        sp.add_argument("--group", default="zd:1")
        sp.add_argument("--alphabet", type=int, default=2)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--domain")
        sp.add_argument("--pattern")
        sp.add_argument("--write", type=int)
        sp.add_argument("--table", help="outputs listed from the highest input code down, e.g. 01101110")
        sp.set_defaults(func=func)
    return ap


def job_argv(path: str) -> list[str]:
    job = json.loads(Path(path).read_text())
    cmd = job["command"]
    argv = list(cmd) if isinstance(cmd, list) else cmd.split()
    for key, val in job.get("args", {}).items():
        flag = "--" + key.replace("_", "-")
        if val is True:
            argv.append(flag)
        elif val is not False and val is not None:
            argv.append(f"{flag}={val}")
    return argv


_VALUE_FLAGS = {"--domain", "--pattern", "--p", "--q", "--table"}


def _glue(argv: list[str]) -> list[str]:
    """Turn ``--domain -1,0,1`` into ``--domain=-1,0,1`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _glue(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.job:
        top = [a for a in argv if a in ("--report", "--timings")]
        argv = top + job_argv(args.job)
        args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    args.argv = argv
    args.started = time.perf_counter()
    try:
        args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

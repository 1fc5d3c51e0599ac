"""Command-line interface.

    propveto core <file> [--certificates] [--format text|json]
    propveto consume <file> [--trace] [--format text|json]
    propveto tokens <file> --order seq|rr|random|@<file> [--seed <u64>] [--format text|json]
    propveto manipulate <file> --voter <i> [--format text|json]
    propveto simulate --stat core-proportion|winner-count|prop4 --n <list> --m <list>
                      --samples <N> --seed <u64> [--format table|records] [--workers <k>]

Candidates and voters are 1-based on the command line and in all output.
Exit status: 0 success, 1 invalid input or arguments, 2 internal integer limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .flowsolver import InternalLimitError
from .manipulation import find_pessimist_manipulation
from .montecarlo import SimulationSpec, render_records, render_table, run_simulation
from .prefmodel import ProfileParseError, read_profile
from .rules import TokenOrder, consumption_trace_render, consumption_winners, tokens_winners
from .vetocore import blocking_certificate, compute_core


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _one_based(cands) -> list[int]:
    return [c + 1 for c in sorted(cands)]


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def read_token_order(path: str) -> TokenOrder:
    """Explicit clone order: one ``voter clone`` pair per line, both 1-based; '#' comments allowed."""
    slots = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ProfileParseError(lineno, "expected 'voter clone'")
            try:
                v, k = int(parts[0]), int(parts[1])
            except ValueError:
                raise ProfileParseError(lineno, "non-integer token") from None
            slots.append((v - 1, k - 1))
    return TokenOrder.explicit(slots)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="propveto", description="Proportional veto core tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("core", help="compute the proportional veto core")
    p.add_argument("input")
    p.add_argument("--certificates", action="store_true", help="list a blocking witness per blocked candidate")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("consume", help="veto by consumption winners")
    p.add_argument("input")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("tokens", help="voting by veto tokens winners")
    p.add_argument("input")
    p.add_argument("--order", required=True, help="seq, rr, random, or @FILE")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("manipulate", help="pessimist manipulation for one voter")
    p.add_argument("input")
    p.add_argument("--voter", type=int, required=True, help="1-based voter index")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("simulate", help="Impartial Culture simulation over an (n, m) grid")
    p.add_argument("--stat", required=True)
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated voter counts")
    p.add_argument("--m", type=_int_list, required=True, help="comma-separated candidate counts")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("table", "records"), default="table")
    return parser


def _cmd_core(args, out: TextIO) -> None:
    p = read_profile(args.input)
    core = compute_core(p)
    certs = []
    if args.certificates:
        for c in range(p.m):
            if c not in core:
                cert = blocking_certificate(p, c)
                certs.append(
                    {
                        "candidate": c + 1,
                        "coalition": _one_based(cert.coalition),
                        "blocking_set": _one_based(cert.blocking_set),
                    }
                )
    if args.format == "json":
        obj = {"core": _one_based(core)}
        if args.certificates:
            obj["certificates"] = certs
        out.write(_dump(obj))
        return
    out.write("core: " + " ".join(map(str, _one_based(core))) + "\n")
    for cert in certs:
        out.write(
            f"blocked {cert['candidate']}: coalition {' '.join(map(str, cert['coalition']))}"
            f" | blocking set {' '.join(map(str, cert['blocking_set']))}\n"
        )


def _cmd_consume(args, out: TextIO) -> None:
    p = read_profile(args.input)
    winners, trace = consumption_winners(p)
    if args.format == "json":
        obj = {"winners": _one_based(winners)}
        if args.trace:
            obj["trace"] = [
                {
                    "duration": f"{r.duration.numerator}/{r.duration.denominator}",
                    "assignment": [c + 1 for c in r.assignment],
                    "eliminated": _one_based(r.eliminated),
                    "capacities": [f"{q.numerator}/{q.denominator}" for q in r.capacities],
                }
                for r in trace.rounds
            ]
        out.write(_dump(obj))
        return
    if args.trace:
        out.write(consumption_trace_render(trace))
    else:
        out.write("winners: " + " ".join(map(str, _one_based(winners))) + "\n")


def _cmd_tokens(args, out: TextIO) -> None:
    p = read_profile(args.input)
    spec = args.order
    if spec.startswith("@"):
        order = read_token_order(spec[1:])
    elif spec == "seq":
        order = TokenOrder.sequential()
    elif spec == "rr":
        order = TokenOrder.round_robin()
    elif spec == "random":
        order = TokenOrder.random(args.seed)
    else:
        raise UsageError(f"propveto tokens: unknown --order {spec!r}")
    winners = tokens_winners(p, order)
    if args.format == "json":
        out.write(_dump({"winners": _one_based(winners)}))
    else:
        out.write("winners: " + " ".join(map(str, _one_based(winners))) + "\n")


def _cmd_manipulate(args, out: TextIO) -> None:
    p = read_profile(args.input)
    if not 1 <= args.voter <= p.n:
        raise UsageError(f"propveto manipulate: --voter must be in 1..{p.n}")
    res = find_pessimist_manipulation(p, args.voter - 1)
    obj = {
        "manipulable": res.manipulable,
        "strategic_ballot": [c + 1 for c in res.strategic_ballot.order] if res.strategic_ballot else None,
        "sincere_core": _one_based(res.sincere_core),
        "sincere_worst": res.sincere_worst + 1,
        "manipulated_core": _one_based(res.manipulated_core) if res.manipulated_core is not None else None,
        "manipulated_worst": res.manipulated_worst + 1 if res.manipulated_worst is not None else None,
    }
    if args.format == "json":
        out.write(_dump(obj))
        return
    out.write(f"manipulable: {'yes' if res.manipulable else 'no'}\n")
    out.write(f"sincere core: {' '.join(map(str, obj['sincere_core']))} (worst {obj['sincere_worst']})\n")
    if res.manipulable:
        out.write(f"strategic ballot: {' '.join(map(str, obj['strategic_ballot']))}\n")
        out.write(
            f"manipulated core: {' '.join(map(str, obj['manipulated_core']))} (worst {obj['manipulated_worst']})\n"
        )


def _cmd_simulate(args, out: TextIO) -> None:
    grid = [(n, m) for n in args.n for m in args.m]
    spec = SimulationSpec(args.stat, tuple(grid), args.samples, args.seed, workers=max(1, args.workers))
    result = run_simulation(spec)
    out.write(render_table(result) if args.format == "table" else render_records(result))


COMMANDS = {
    "core": _cmd_core,
    "consume": _cmd_consume,
    "tokens": _cmd_tokens,
    "manipulate": _cmd_manipulate,
    "simulate": _cmd_simulate,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except InternalLimitError as exc:
        err.write(f"propveto: internal limit: {exc}\n")
        return 2
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 1
    except (ProfileParseError, ValueError, OSError) as exc:
        err.write(f"propveto: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

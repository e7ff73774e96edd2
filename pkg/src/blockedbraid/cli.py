"""Command-line front end: ``bbraid verify-all | braid-eq | bb-decide | tc | render | replay``.

Exit codes: 0 success or equal, 1 verified distinct or failed check,
2 usage error, 3 unknown (including exhausted enumerations).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterator, Sequence

from . import __version__, braid, presentation
from .errors import BraidError
from .report import format_record, parse_record, replay_record, run_check
from .trel import FINITE_PROBES
from .words import BraidWord, format_letter, format_word, parse_braid

EXIT_OK, EXIT_DISTINCT, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def verify_all_records(k_max: int = 6, inject_fault: str | None = None) -> Iterator[dict]:
    """Every claim checked by ``verify-all``, in fixed logical order."""
    yield {"record": "header", "tool": "blockedbraid", "version": __version__,
           "command": "verify-all", "kmax": k_max}
    for k in range(2, k_max + 1):
        for name, i, _, _ in braid.torsion_identity_pairs(k):
            yield run_check("torsion-identity", identity=name, k=k, i="-" if i is None else i)
    for n in range(2, k_max + 1):
        cert = braid.belt_trick_certificate(n)
        if inject_fault == "belt-trick" and n == 2:
            cert = braid.TwistCertificate(n, cert.factors[:-1], cert.target)
        yield run_check("belt-trick", n=n, factors=cert.to_text())
    yield run_check("candidate-order", n=2, limit=100, expected=2)
    yield run_check("candidate-order", n=3, limit=100, expected=12)
    yield run_check("candidate-order", n=4, limit=20000, expected="exhausted")
    for claim in presentation.structure_report(presentation.candidate_table(3)):
        yield run_check("structure", claim=claim.name)
    s1 = parse_braid("s1", 2)
    yield run_check("quotient-identity", n=2, w1=format_word(s1), w2=format_word(s1**-1), expect="Equal")
    for n in (2, 3):
        yield run_check("quotient-identity", n=n, w1=format_word(braid.torsion(n) ** 4), w2="",
                        expect="Equal")
    yield run_check("quotient-identity", n=3, w1="s1 s1", w2="", expect="DistinctInCandidate")
    for n in range(2, 5):
        for group in FINITE_PROBES:
            yield run_check("full-twist", n=n, group=group, trials=200, seed=0)
    yield run_check("sigma1-tower", kmax=64)
    yield run_check("sigma1-classes", kmax=20, n=4)
    for k in range(21):
        for l in range(k + 1, 21):
            yield run_check("separation", n=4, w1=format_word(BraidWord(4, (1,) * k)),
                            w2=format_word(BraidWord(4, (1,) * l)), probes="sl2:xyzw",
                            expect="Distinct")
    for group in FINITE_PROBES:
        yield run_check("separation", n=3, w1="s1 s1", w2="", probes=group,
                        expect="Indistinguishable")
    # no invariant here separates the full twist from the identity
    for n in range(2, 5):
        probes = [*FINITE_PROBES, *(["sl2:xyzw"] if n >= 4 else [])]
        yield run_check("separation", n=n, w1=format_word(braid.torsion(n) ** 2), w2="",
                        probes=",".join(probes), expect="Indistinguishable")


def render(w: BraidWord) -> str:
    """ASCII picture: strands are rows, one 5-column block per letter, left to right."""
    n = w.strands
    rows = [[f"{(r // 2) + 1:<2}" if r % 2 == 0 else "  "] for r in range(2 * n - 1)]
    header = ["  "]
    for r, row in enumerate(rows):
        row.append("--" if r % 2 == 0 else "  ")
    header.append("  ")
    for letter in w.letters:
        i = abs(letter)
        top, gap, bottom = 2 * (i - 1), 2 * i - 1, 2 * i
        header.append(f"{format_letter(letter):^5}")
        for r, row in enumerate(rows):
            if r == top:
                row.append("-\\ /-")
            elif r == bottom:
                row.append("-/ \\-")
            elif r == gap:
                row.append("  /  " if letter > 0 else "  \\  ")
            else:
                row.append("-----" if r % 2 == 0 else "     ")
    for r, row in enumerate(rows):
        row.append("--" if r % 2 == 0 else "  ")
    lines = ["".join(header).rstrip()] if w.letters else []
    lines += ["".join(row).rstrip() for row in rows]
    return "\n".join(lines)


def _parse(text: str, n: int) -> BraidWord:
    try:
        return parse_braid(text, n)
    except BraidError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify_all(args, out) -> int:
    first_failure = None
    for rec in verify_all_records(args.kmax, args.inject_fault):
        print(format_record(rec), file=out)
        if rec.get("status") == "FAIL" and first_failure is None:
            first_failure = rec
    if first_failure is not None:
        print(f"first failing record: {format_record(first_failure)}", file=sys.stderr)
        return EXIT_DISTINCT
    return EXIT_OK


def cmd_braid_eq(args, out) -> int:
    w1, w2 = _parse(args.w1, args.n), _parse(args.w2, args.n)
    rec = run_check("braid-eq", n=args.n, w1=format_word(w1), w2=format_word(w2))
    print(rec["verdict"], file=out)
    print(format_record(rec), file=out)
    return EXIT_OK if rec["verdict"] == "EQUAL" else EXIT_DISTINCT


_BB_EXIT = {"EQUAL-IN-BBn": EXIT_OK, "DISTINCT-IN-BBn": EXIT_DISTINCT,
            "DISTINCT-IN-CANDIDATE": EXIT_UNKNOWN, "UNKNOWN": EXIT_UNKNOWN}


def cmd_bb_decide(args, out) -> int:
    if args.n < 2:
        raise UsageError("bb-decide needs n >= 2")
    w1, w2 = _parse(args.w1, args.n), _parse(args.w2, args.n)
    probes = args.probe or [*FINITE_PROBES, *(["sl2:xyzw"] if args.n >= 4 else [])]
    for p in probes:
        if p == "sl2:xyzw" and args.n < 4:
            raise UsageError("probe sl2:xyzw needs n >= 4")
    try:
        rec = run_check("bb-decide", n=args.n, w1=format_word(w1), w2=format_word(w2),
                        probes=",".join(probes))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(rec["verdict"], file=out)
    print(format_record(rec), file=out)
    return _BB_EXIT[rec["verdict"]]


def cmd_tc(args, out) -> int:
    try:
        pres = presentation.parse_presentation(Path(args.pres).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    table = presentation.todd_coxeter(pres, args.limit)
    print(format_record({"check": "tc", "presentation": str(pres), "status": table.status}), file=out)
    if not table.complete:
        return EXIT_UNKNOWN
    out.write(table.to_text())
    return EXIT_OK


def cmd_render(args, out) -> int:
    print(render(_parse(args.w, args.n)), file=out)
    return EXIT_OK


def cmd_replay(args, out) -> int:
    try:
        lines = Path(args.file).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    mismatches = 0
    for line in lines:
        rec = parse_record(line)
        if rec is None or "check" not in rec or rec["check"] == "tc":
            continue
        same, _ = replay_record(rec)
        mismatches += not same
        print(f"replay={'MATCH' if same else 'MISMATCH'} {line}", file=out)
    return EXIT_OK if mismatches == 0 else EXIT_DISTINCT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbraid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", help="run every verification check")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--inject-fault", choices=["belt-trick"], help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("braid-eq", help="decide equality in B_n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("w1")
    p.add_argument("w2")
    p.set_defaults(func=cmd_braid_eq)

    p = sub.add_parser("bb-decide", help="decide or separate blocked braids")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--probe", action="append",
                   help="perm, sym3, q8, cyc<k> or sl2:xyzw (repeatable)")
    p.add_argument("w1")
    p.add_argument("w2")
    p.set_defaults(func=cmd_bb_decide)

    p = sub.add_parser("tc", help="Todd-Coxeter enumeration of a presentation file")
    p.add_argument("--pres", required=True)
    p.add_argument("--limit", type=int, default=100_000)
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("render", help="draw a braid word as text")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("w")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("replay", help="re-verify every record in a report file")
    p.add_argument("file")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "kmax", 2) < 2:
        print("error: --kmax must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

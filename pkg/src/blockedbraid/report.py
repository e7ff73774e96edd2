"""Line-oriented key=value report records and the replayable checks behind them.

Every check is a deterministic function of its input fields, so a record can be
re-run from the file alone and compared field by field (timing excluded).
"""

from __future__ import annotations

import shlex
import time
from dataclasses import dataclass
from typing import Callable

from . import braid, presentation, trel
from .errors import CertificateCheckFailed
from .groups import make_group
from .words import BraidWord, parse_braid

TIMING_KEYS = frozenset({"elapsed_ms"})


def format_record(fields: dict[str, object]) -> str:
    return " ".join(f"{k}={shlex.quote(str(v))}" for k, v in fields.items())


def parse_record(line: str) -> dict[str, str] | None:
    """Parse one record; lines without ``key=value`` tokens give None."""
    try:
        tokens = shlex.split(line)
    except ValueError:
        return None
    if not tokens or any("=" not in t for t in tokens):
        return None
    return dict(t.split("=", 1) for t in tokens)


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _word(fields, key="w"):
    return parse_braid(fields[key], int(fields["n"]))


def _probes(spec: str, n: int) -> list[trel.Probe]:
    return [p for s in filter(None, spec.split(",")) for p in trel.make_probes(s, n)]


# ---------------------------------------------------------------------------
# check functions: input fields -> output fields


def _torsion_identity(f):
    k = int(f["k"])
    i = None if f.get("i", "-") == "-" else int(f["i"])
    for name, step, lhs, rhs in braid.torsion_identity_pairs(k):
        if name == f["identity"] and step == i:
            ok, cost = braid.braid_equal_with_cost(lhs, rhs)
            return {"status": _status(ok), "cost": cost}
    raise KeyError(f"no identity {f['identity']!r} for k={k}")


def _belt_trick(f):
    cert = braid.TwistCertificate.from_text(int(f["n"]), f["factors"])
    try:
        cost = cert.verify()
    except CertificateCheckFailed as exc:
        return {"status": "FAIL", "reason": str(exc)}
    return {"status": "PASS", "cost": cost}


def _candidate_order(f):
    n, limit = int(f["n"]), int(f["limit"])
    table = presentation.todd_coxeter(presentation.bb_candidate_presentation(n), limit)
    order = table.order if table.complete else "exhausted"
    return {"order": order, "status": _status(str(order) == f["expected"])}


def _structure(f):
    claims = presentation.structure_report(presentation.candidate_table(3))
    claim = next(c for c in claims if c.name == f["claim"])
    return {"status": _status(claim.passed)}


def _quotient_identity(f):
    decision = presentation.bb3_decide(_word(f, "w1"), _word(f, "w2"))
    return {
        "coset1": decision.coset1,
        "coset2": decision.coset2,
        "status": _status(decision.label == f["expect"]),
    }


def _full_twist(f):
    rep = trel.full_twist_fixedpoint_check(
        int(f["n"]), make_group(f["group"]), int(f["trials"]), int(f["seed"])
    )
    return {"fixed": rep.fixed, "status": _status(rep.passed)}


def _sigma1_tower(f):
    rep = trel.sigma1_tower_check(int(f["kmax"]))
    return {"last_max_entry": rep.growth[-1], "status": _status(rep.passed)}


def _sigma1_classes(f):
    pairs = trel.sigma1_class_check(int(f["kmax"]), int(f["n"]))
    ok = all(p.status == "no" and p.dimension <= 1 for p in pairs)
    return {
        "pairs": len(pairs),
        "max_dimension": max(p.dimension for p in pairs),
        "status": _status(ok),
    }


def _separation(f):
    n = int(f["n"])
    w1, w2 = _word(f, "w1"), _word(f, "w2")
    verdict = trel.separate_blocked(w1, w2, _probes(f["probes"], n))
    out: dict[str, object] = {"verdict": verdict.label}
    if verdict.witness is not None:
        out |= verdict.witness.fields()
    if "expect" in f:
        out["status"] = _status(verdict.label == f["expect"])
    return out


def _braid_eq(f):
    ok, cost = braid.braid_equal_with_cost(_word(f, "w1"), _word(f, "w2"))
    return {"verdict": "EQUAL" if ok else "DISTINCT", "cost": cost}


def bb_decide_fields(w1: BraidWord, w2: BraidWord, probe_spec: str) -> dict[str, object]:
    n = w1.strands
    if braid.braid_equal(w1, w2):
        return {"verdict": "EQUAL-IN-BBn", "reason": "equal-in-Bn"}
    quotient = None
    if n <= 3:
        quotient = presentation.bb3_decide(w1, w2)
        if quotient.equal:
            return {"verdict": "EQUAL-IN-BBn", "reason": "candidate-quotient"}
    sep = trel.separate_blocked(w1, w2, _probes(probe_spec, n))
    if sep.distinct:
        return {"verdict": "DISTINCT-IN-BBn", **sep.witness.fields()}
    if quotient is not None:
        return {"verdict": "DISTINCT-IN-CANDIDATE", "caveat": quotient.caveat}
    return {"verdict": "UNKNOWN", "reason": "no probe separates"}


def _bb_decide(f):
    return bb_decide_fields(_word(f, "w1"), _word(f, "w2"), f["probes"])


@dataclass(frozen=True)
class Check:
    inputs: tuple[str, ...]
    run: Callable[[dict[str, str]], dict[str, object]]


CHECKS: dict[str, Check] = {
    "torsion-identity": Check(("identity", "k", "i"), _torsion_identity),
    "belt-trick": Check(("n", "factors"), _belt_trick),
    "candidate-order": Check(("n", "limit", "expected"), _candidate_order),
    "structure": Check(("claim",), _structure),
    "quotient-identity": Check(("n", "w1", "w2", "expect"), _quotient_identity),
    "full-twist": Check(("n", "group", "trials", "seed"), _full_twist),
    "sigma1-tower": Check(("kmax",), _sigma1_tower),
    "sigma1-classes": Check(("kmax", "n"), _sigma1_classes),
    "separation": Check(("n", "w1", "w2", "probes", "expect"), _separation),
    "braid-eq": Check(("n", "w1", "w2"), _braid_eq),
    "bb-decide": Check(("n", "w1", "w2", "probes"), _bb_decide),
}


def run_check(name: str, **inputs) -> dict[str, object]:
    """Run a registered check; returns the full record including timing."""
    spec = CHECKS[name]
    fields = {"check": name} | {k: str(v) for k, v in inputs.items()}
    start = time.perf_counter()
    out = spec.run(fields)
    elapsed = (time.perf_counter() - start) * 1000
    return fields | {k: str(v) for k, v in out.items()} | {"elapsed_ms": f"{elapsed:.2f}"}


def replay_record(record: dict[str, str]) -> tuple[bool, dict[str, object]]:
    """Re-run a record from its inputs; True iff every non-timing field matches."""
    name = record["check"]
    inputs = {k: record[k] for k in CHECKS[name].inputs if k in record}
    fresh = run_check(name, **inputs)
    strip = lambda r: {k: str(v) for k, v in r.items() if k not in TIMING_KEYS}
    same = strip(fresh) == strip(record)
    if same and record.get("witness"):
        n = int(record["n"])
        wit = trel.Witness(
            record["witness"], record["probe"], record["base"], record["value1"], record["value2"]
        )
        same = trel.check_witness(parse_braid(record["w1"], n), parse_braid(record["w2"], n), wit)
    return same, fresh


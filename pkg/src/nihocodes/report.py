"""Verification reports: closed forms against enumeration for one family or a sweep."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import closed
from .codes import DIRECT_WORDS_MAX, weight_dist_enumerate
from .dist import ValueDist, WeightDist
from .expsums import moment_report, sum_table
from .field import FieldCtx, build_field, format_poly
from .niho import NihoFamily, Variant, canonical_families, equivalence_classes

METHODS = ("direct", "niho")


@dataclass
class VerificationReport:
    field: dict
    family: dict
    closed: dict
    enumerated: dict
    moments: list
    counts: dict
    passed: bool
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "family": self.family,
            "closed": self.closed,
            "enumerated": self.enumerated,
            "moments": self.moments,
            "counts": self.counts,
            "pass": self.passed,
            "timings": self.timings,
        }


def field_dict(ctx: FieldCtx) -> dict:
    return {
        "p": ctx.p,
        "m": ctx.m,
        "n": ctx.n,
        "q": ctx.q,
        "modulus": list(ctx.spec.modulus),
        "modulus_text": format_poly(ctx.spec.modulus),
    }


class _Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        yield
        self.phases[name] = round(time.perf_counter() - t0, 6)


def _hist(table: np.ndarray) -> ValueDist:
    vals, freq = np.unique(table, return_counts=True)
    return ValueDist(dict(zip(vals.tolist(), freq.tolist())), table.size)


def verify_family(
    ctx: FieldCtx,
    fam: NihoFamily,
    method: str = "both",
    jobs: int = 1,
    words: bool = True,
) -> VerificationReport:
    """Compare every closed form for ``fam`` with its enumeration oracle."""
    timer = _Timer()
    methods = METHODS if method == "both" else (method,)

    with timer.phase("closed"):
        cvd = closed.closed_value_dist(fam)
        cwd = closed.closed_weight_dist(fam)
    closed_part = {
        "value_dist": cvd.pairs(),
        "weight_dist": cwd.pairs(),
        "params": list(cwd.params),
        "predicted_min_distance": closed.predicted_min_distance(fam),
    }

    tables = {}
    for meth in methods:
        with timer.phase(f"sums_{meth}"):
            tables[meth] = sum_table(ctx, fam, meth, jobs=jobs)
    dists = {meth: _hist(t) for meth, t in tables.items()}
    main = dists[methods[0]]

    checks = {
        "value_dist": all(d.entries == cvd.entries for d in dists.values()),
        "support": set(main.entries) <= set(cvd.entries),
    }
    mismatches = None
    if len(tables) == 2:
        mismatches = int(np.count_nonzero(tables["direct"] != tables["niho"]))
        checks["niho_roots"] = mismatches == 0

    k = closed.dimension(fam)
    weights: dict[str, WeightDist] = {}
    with timer.phase("weights_via_sums"):
        weights["via_sums"] = weight_dist_enumerate(ctx, fam, "via_sums", jobs=jobs, sums_method=methods[0])
    if words and ctx.p**k <= DIRECT_WORDS_MAX:
        with timer.phase("weights_direct_words"):
            weights["direct_words"] = weight_dist_enumerate(ctx, fam, "direct_words", jobs=jobs)
    checks["weight_dist"] = all(w.same_as(cwd) for w in weights.values())
    checks["min_distance"] = cwd.min_distance == closed_part["predicted_min_distance"]

    enumerated = {
        "value_dist": {meth: d.pairs() for meth, d in dists.items()},
        "weight_dist": {name: w.pairs() for name, w in weights.items()},
        "params": list(weights["via_sums"].params),
        "niho_roots_mismatches": mismatches,
        "checks": checks,
    }

    with timer.phase("moments"):
        moments = moment_report(ctx, fam, main, brute=True)

    with timer.phase("counts"):
        counts: dict = {"n2": {"closed": closed.n2(fam), "brute": closed.n2(fam, "brute", ctx)}}
        if fam.variant is not Variant.BINARY3:
            counts["n3"] = {"closed": closed.n3(fam), "brute": closed.n3(fam, "brute", ctx)}
            if ctx.q <= closed.NAIVE_N3_MAX_Q:
                counts["n3"]["naive"] = closed.n3(fam, "naive", ctx)
        counts["agree"] = all(len(set(v.values())) == 1 for v in counts.values())

    passed = all(checks.values()) and moments.passed and counts["agree"]
    return VerificationReport(
        field=field_dict(ctx),
        family=fam.to_dict(),
        closed=closed_part,
        enumerated=enumerated,
        moments=moments.to_list(),
        counts=counts,
        passed=passed,
        timings=timer.phases,
    )


# --- sweeps -----------------------------------------------------------------------------

@dataclass
class SweepRow:
    params: dict
    members: list
    l: int
    code: tuple
    enumerator: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "members": self.members,
            "l": self.l,
            "code": list(self.code),
            "enumerator": self.enumerator,
            "pass": self.passed,
        }


@dataclass
class SweepResult:
    field: dict
    variant: str
    parameter_count: int
    rows: list

    @property
    def distribution_classes(self) -> int:
        return len({r.enumerator for r in self.rows})

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "variant": self.variant,
            "parameters": self.parameter_count,
            "classes": [r.to_dict() for r in self.rows],
            "distribution_classes": self.distribution_classes,
            "pass": self.passed,
        }


def sweep(
    p: int,
    m: int,
    variant: Variant | str,
    method: str = "both",
    jobs: int = 1,
    modulus=None,
    ctx: FieldCtx | None = None,
) -> SweepResult:
    """Verify one representative per equivalence class of canonical parameters."""
    variant = Variant(variant)
    ctx = ctx or build_field(p, m, modulus)
    fams = canonical_families(p, m, variant)
    rows = []
    for members in equivalence_classes(fams):
        rep = members[0]
        rep_report = verify_family(ctx, rep, method=method, jobs=jobs)
        wd = closed.closed_weight_dist(rep)
        rows.append(SweepRow(
            params=rep.params,
            members=[f.params for f in members],
            l=rep.l,
            code=wd.params,
            enumerator=wd.enumerator(),
            passed=rep_report.passed,
        ))
    return SweepResult(field_dict(ctx), variant.value, len(fams), rows)


# --- rendering -----------------------------------------------------------------------------

def dumps_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _poly_text(pairs, var: str = "x") -> str:
    return " + ".join(str(f) if w == 0 else f"{f}{var}^{w}" for w, f in sorted(pairs))


def report_text(rep: VerificationReport) -> str:
    fam = rep.family
    n, k, d = rep.closed["params"]
    lines = [
        f"field: GF({rep.field['p']}^{rep.field['n']}) modulus {rep.field['modulus_text']}",
        f"family: {fam['variant']} {fam['params']} s1={fam['s1']} s2={fam['s2']} "
        f"d1={fam['d1']} d2={fam['d2']} l={fam['l']}",
        f"code: {n},{k},{d}",
        f"closed values: {rep.closed['value_dist']}",
    ]
    for meth, pairs in rep.enumerated["value_dist"].items():
        lines.append(f"enumerated values ({meth}): {pairs}")
    lines.append(f"closed weights: {_poly_text(rep.closed['weight_dist'])}")
    for name, pairs in rep.enumerated["weight_dist"].items():
        lines.append(f"enumerated weights ({name}): {_poly_text(pairs)}")
    for name, ok in rep.enumerated["checks"].items():
        lines.append(f"check {name}: {'ok' if ok else 'FAIL'}")
    for item in rep.moments:
        lines.append(
            f"moment {item['identity']}: lhs={item['lhs']} closed={item['rhs_closed']} "
            f"brute={item['rhs_brute']} {'ok' if item['pass'] else 'FAIL'}"
        )
    for key in ("n2", "n3"):
        if key in rep.counts:
            vals = " ".join(f"{k}={v}" for k, v in rep.counts[key].items())
            lines.append(f"{key}: {vals}")
    lines.append(f"result: {'PASS' if rep.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def report_csv(rep: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "value_or_weight", "frequency", "source"])
    for v, f in rep.closed["value_dist"]:
        w.writerow(["value", v, f, "closed"])
    for meth, pairs in rep.enumerated["value_dist"].items():
        for v, f in pairs:
            w.writerow(["value", v, f, meth])
    for wt, f in rep.closed["weight_dist"]:
        w.writerow(["weight", wt, f, "closed"])
    for name, pairs in rep.enumerated["weight_dist"].items():
        for wt, f in pairs:
            w.writerow(["weight", wt, f, name])
    return buf.getvalue()


def sweep_text(res: SweepResult) -> str:
    f = res.field
    lines = [f"sweep {res.variant} over GF({f['p']}^{f['n']}) modulus {f['modulus_text']}"]
    if not res.rows:
        lines.append("no valid parameters")
        return "\n".join(lines) + "\n"
    lines.append(f"{'params':<24} {'l':>4}  {'[n,k,d]':<16} {'pass':<5} members")
    for r in res.rows:
        ps = ",".join(f"{k}={v}" for k, v in r.params.items())
        code = ",".join(map(str, r.code))
        mem = " ".join("(" + ",".join(str(v) for v in m.values()) + ")" for m in r.members)
        lines.append(f"{ps:<24} {r.l:>4}  {code:<16} {'ok' if r.passed else 'FAIL':<5} {mem}")
    lines.append(
        f"parameters: {res.parameter_count}  classes: {len(res.rows)}  "
        f"distribution classes: {res.distribution_classes}  result: {'PASS' if res.passed else 'FAIL'}"
    )
    return "\n".join(lines) + "\n"


def sweep_csv(res: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["params", "l", "n", "k", "d", "enumerator", "pass"])
    for r in res.rows:
        w.writerow([
            ";".join(f"{k}={v}" for k, v in r.params.items()), r.l, *r.code, r.enumerator, int(r.passed),
        ])
    return buf.getvalue()

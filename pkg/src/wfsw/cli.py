"""Command-line entry point: ``wfsw <command> [flags]``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .factorization import (
    accuracy_check,
    algebra_structures,
    all_coalgebras,
    coalgebra_category,
    forced_identity_check,
    gamma,
    gamma_full_embedding_check,
    underlying_boxplus_equals_box,
    validate_ff,
    validate_lifting_function,
)
from .fincat import CategoryError, FinCategory, validate_category
from .lifting import LiftCache, WfsSpec, is_split_epi, is_split_mono, verify_wfs
from .model import ModelSpec, model_axioms_check, prop53_check
from .probes import ProbeSet
from .report import FAIL, INCONCLUSIVE, PASS, Check, Report, checklist, dumps
from .smallobject import iterate_soa, soa_build_factorization, soa_report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

COMMANDS = ("validate", "wfs-check", "soa-run", "fact-check", "gamma", "boxplus-check",
            "split-verify", "model-check", "prop53")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--probes", metavar="PATH", help="probe set file")
    common.add_argument("--cat", metavar="PATH", help="category file")
    common.add_argument("--spec", metavar="PATH", help="spec file for the command")
    common.add_argument("--max-steps", metavar="N", type=_positive, default=8,
                        help="stage cap for the small object argument (default 8)")
    common.add_argument("--size-guard", metavar="N", type=_positive, default=10**6,
                        help="node budget for lifting-function search (default 10**6)")
    common.add_argument("--garner", action="store_true", help="use the Garner-modified iteration")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="exit 3 when a check is inconclusive")

    p = argparse.ArgumentParser(prog="wfsw", description="Finite-scale checks for weak factorization systems.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    v = sub.add_parser("validate", parents=[common], help="check the category laws")
    v.add_argument("path", nargs="?", help="category file (same as --cat)")
    sub.add_parser("wfs-check", parents=[common], help="check a (left, right, factorization) spec")
    s = sub.add_parser("soa-run", parents=[common], help="run the small object argument")
    s.add_argument("--gens", metavar="PATH", required=True, help="generator file")
    s.add_argument("--arrow", metavar="ID", help="trace a single arrow")
    f = sub.add_parser("fact-check", parents=[common], help="validate a functorial factorization")
    f.add_argument("--accuracy", choices=("left", "right", "both"), default="both")
    sub.add_parser("gamma", parents=[common], help="lifting functions induced by algebras")
    sub.add_parser("boxplus-check", parents=[common], help="coherent lifting functions versus lifting")
    sub.add_parser("split-verify", parents=[common], help="split monos and split epis of abelian groups")
    sub.add_parser("model-check", parents=[common], help="model-structure axioms on probes")
    sub.add_parser("prop53", parents=[common], help="conditions for W to come from a model structure")
    return p


# -- loading -----------------------------------------------------------------------

class Inputs:
    def __init__(self, args):
        self.args = args
        self.category = self._category()
        self._probes: ProbeSet | None = None

    def _category(self) -> FinCategory:
        a = self.args
        path = a.cat or getattr(a, "path", None)
        if path is None:
            for ref in (a.probes, a.spec, getattr(a, "gens", None)):
                if ref is not None:
                    path = io.category_ref(ref)
                    if path is not None:
                        break
        if path is None:
            raise UsageError("no category: pass --cat or name one under \"category\" in an input file")
        return io.load_category(path)

    @property
    def probes(self) -> ProbeSet:
        if self._probes is None:
            if self.args.probes is None:
                raise UsageError(f"{self.args.command} needs --probes")
            self._probes = io.load_probes(self.args.probes, self.category)
        return self._probes

    def spec(self) -> io._Doc:
        if self.args.spec is None:
            raise UsageError(f"{self.args.command} needs --spec")
        return io.load_doc(self.args.spec)

    def factorization(self, doc: io._Doc, spec, where: str):
        probes = self.probes if self.args.probes else None
        return io.factorization_from(doc, self.category, spec, where, self.args.max_steps,
                                     self.args.garner, probes)

    def family(self, doc: io._Doc, F):
        """Coalgebras over the family arrows (default: the probe arrows) with all their morphisms."""
        spec = doc.data.get("family") if isinstance(doc.data, dict) else None
        if spec is None:
            arrows = list(self.probes.arrows)
        else:
            arrows = io.family_arrows(doc, self.category, spec, "$.family")
            if doc.get(spec, "include_left_factors", "$.family", bool, default=False):
                arrows += [F.left(g) for g in self.probes.arrows]
        return coalgebra_category(F, all_coalgebras(F, dict.fromkeys(arrows)))


# -- commands -----------------------------------------------------------------------

def cmd_validate(inp: Inputs):
    C = inp.category
    violations = validate_category(C)
    report = Report("validate", f"{C.flavor} category with {len(C.objects)} objects")
    kinds = ("malformed", "payload", "identity", "totality", "closure", "associativity")
    for kind in kinds:
        bad = [{"message": x.message, "witness": x.witness} for x in violations if x.kind == kind]
        report.add(checklist(kind, bad))
    return report, None


def cmd_wfs_check(inp: Inputs):
    doc, C = inp.spec(), inp.category
    left = io.arrow_class(doc, C, doc.get(doc.data, "left", "$"), "$.left")
    right = io.arrow_class(doc, C, doc.get(doc.data, "right", "$"), "$.right")
    fspec = doc.get(doc.data, "factorization", "$", default=None)
    F = None if fspec is None else inp.factorization(doc, fspec, "$.factorization")
    report = verify_wfs(WfsSpec(C, left, right, F), inp.probes)
    report.command = "wfs-check"
    return report, None


def _generators(inp: Inputs) -> tuple[list, int | None]:
    """Generator ids, plus an optional forced stage count from the file."""
    doc = io.load_doc(inp.args.gens)
    data = doc.data
    ids = data if isinstance(data, list) else doc.get(data, "generators", "$", list)
    stages = None if isinstance(data, list) else doc.get(data, "stages", "$", int, default=None)
    if stages is not None and stages < 0:
        doc.fail("$.stages", "must be non-negative")
    gens = [io.morphism_ref(doc, inp.category, x, f"$.generators[{k}]") for k, x in enumerate(ids)]
    return gens, stages


def cmd_soa_run(inp: Inputs):
    C, a = inp.category, inp.args
    G, stages = _generators(inp)
    if not C.has_colimits():
        raise UsageError(f"{C.flavor} categories do not support the small object argument")
    if a.arrow is not None:
        doc = io._Doc("--arrow", None)
        f = io.morphism_ref(doc, C, a.arrow, "value")
        if stages is None:
            trace = iterate_soa(C, G, f, a.max_steps, a.garner)
        else:
            trace = iterate_soa(C, G, f, stages, a.garner, stop_when_converged=False)
        report = Report("soa-run", f"single arrow {a.arrow}")
        if trace.converged:
            report.add(Check("converged", PASS, detail={"steps": trace.steps}))
        else:
            report.add(Check("converged", INCONCLUSIVE, detail={"guard_hits": 1, "max_steps": a.max_steps}))
        return report, {"trace": trace.records(C)}
    F = soa_build_factorization(C, G, inp.probes, a.max_steps, a.garner)
    report = soa_report(F, inp.probes)
    report.command = "soa-run"
    report.extend(validate_ff(F, inp.probes))
    steps = {C.name_of(f): n for f, n in F.steps_to_converge.items()}
    return report, {"stages": F.stages, "steps": steps}


def cmd_fact_check(inp: Inputs):
    doc = inp.spec()
    F = inp.factorization(doc, doc.data, "$")
    probes = inp.probes
    report = Report("fact-check", probes.universe)
    report.extend(validate_ff(F, probes))
    acc = accuracy_check(F, inp.args.accuracy, probes)
    for c in acc.checks:
        per_arrow = c.detail.pop("per_arrow", {})
        c.detail["failing_arrows"] = sum(1 for ok in per_arrow.values() if not ok)
    report.extend(acc)
    report.extend(forced_identity_check(F, probes))
    return report, None


def cmd_gamma(inp: Inputs):
    doc = inp.spec()
    F = inp.factorization(doc, doc.data, "$")
    X = inp.family(doc, F)
    C, probes = inp.category, inp.probes
    namer = io.Namer(C)
    ids = {k: f"x{i}" for i, k in enumerate(X.objects)}
    dumps_, invalid = [], []
    for g in probes.arrows:
        for a in algebra_structures(F, g):
            phi = gamma(F, a, X)
            if not validate_lifting_function(phi, X).passed:
                invalid.append(a)
            rows = phi.rows(ids.__getitem__, namer.mor)
            dumps_.append({"algebra": namer(a), "rows": [list(r) for r in rows]})
    report = Report("gamma", probes.universe)
    report.add(checklist("gamma valid", invalid, algebras=len(dumps_)))
    emb = gamma_full_embedding_check(F, X, probes)
    for c in emb.checks:
        report.add(c)
    family = {ids[k]: namer(k) for k in X.objects}
    return report, {"family": family, "lifting_functions": dumps_}


def cmd_boxplus_check(inp: Inputs):
    doc = inp.spec()
    F = inp.factorization(doc, doc.data, "$")
    X = inp.family(doc, F)
    report = underlying_boxplus_equals_box(F, X, inp.probes, inp.args.size_guard)
    report.command = "boxplus-check"
    return report, {"decided_by": report.detail["decided_by"], "family_objects": len(X.objects)}


def cmd_split_verify(inp: Inputs):
    from .splitab import SplitFactorization, structure_count_check, verify_split_wfs
    C = inp.category
    if C.flavor != "finab":
        raise UsageError("split-verify needs a finab category")
    F = SplitFactorization(C)
    probes = inp.probes
    report = verify_split_wfs(probes, F)
    report.command = "split-verify"
    report.extend(structure_count_check(probes, F))
    rows = [{"arrow": C.name_of(f), "split_mono": is_split_mono(C, f), "split_epi": is_split_epi(C, f)}
            for f in probes.arrows]
    return report, {"arrows": rows}


def cmd_model_check(inp: Inputs):
    doc, C = inp.spec(), inp.category
    cls = {k: io.arrow_class(doc, C, doc.get(doc.data, k, "$"), f"$.{k}") for k in ("C", "F", "W")}
    facts = {}
    for k in ("fact_cof", "fact_triv"):
        ref = doc.get(doc.data, k, "$", default=None)
        facts[k] = None if ref is None else inp.factorization(doc, ref, f"$.{k}")
    spec = ModelSpec(C, cls["C"], cls["F"], cls["W"], facts["fact_cof"], facts["fact_triv"])
    report = model_axioms_check(spec, inp.probes)
    report.command = "model-check"
    return report, None


def cmd_prop53(inp: Inputs):
    doc, C = inp.spec(), inp.category
    cls = {k: io.arrow_class(doc, C, doc.get(doc.data, k, "$"), f"$.{k}") for k in ("left", "right0", "W")}
    F = inp.factorization(doc, doc.get(doc.data, "factorization", "$"), "$.factorization")
    ref = doc.get(doc.data, "family_probes", "$", str, default=None)
    family = None if ref is None else io.load_probes(io._resolve(Path(doc.path), ref), C)
    report = prop53_check(C, cls["left"], cls["right0"], cls["W"], F, inp.probes,
                          inp.args.size_guard, family, LiftCache(C))
    report.command = "prop53"
    return report, {"vacuous": report.detail["vacuous"]}


DISPATCH = {
    "validate": cmd_validate, "wfs-check": cmd_wfs_check, "soa-run": cmd_soa_run,
    "fact-check": cmd_fact_check, "gamma": cmd_gamma, "boxplus-check": cmd_boxplus_check,
    "split-verify": cmd_split_verify, "model-check": cmd_model_check, "prop53": cmd_prop53,
}


# -- rendering ------------------------------------------------------------------------

def render_document(command: str, report: Report, namer: io.Namer, data=None) -> dict:
    checks = []
    for c in sorted(report.checks, key=lambda c: c.name):
        entry = {"name": c.name, "verdict": c.verdict}
        if c.witness is not None:
            entry["witness"] = namer(c.witness)
        if "guard_hits" in c.detail:
            entry["guard_hits"] = c.detail["guard_hits"]
        if c.detail.get("out_of_scope"):
            entry["out_of_scope"] = True
        checks.append(entry)
    doc = {"command": command, "verdict": report.verdict, "checks": checks,
           "probe_universe": report.probe_universe}
    if data is not None:
        doc["data"] = namer(data)
    return doc


def render_text(doc: dict) -> str:
    lines = [f"{doc['command']}: {doc['verdict']}  [probes: {doc['probe_universe']}]"]
    for c in doc["checks"]:
        extra = " (out of scope)" if c.get("out_of_scope") else ""
        if "guard_hits" in c:
            extra += f" (guard hits: {c['guard_hits']})"
        lines.append(f"  {c['verdict']:<12} {c['name']}{extra}")
        if "witness" in c:
            lines.append(f"      witness: {c['witness']}")
    data = doc.get("data") or {}
    for rec in data.get("trace", []):
        lines.append(f"  step {rec['step']}: object {rec['object']}  converged={rec['converged']}")
    for rec in data.get("arrows", []):
        lines.append(f"  {rec['arrow']:<10} split_mono={rec['split_mono']!s:<5} split_epi={rec['split_epi']}")
    return "\n".join(lines) + "\n"


def exit_status(verdict: str, strict: bool) -> int:
    if verdict == FAIL:
        return EXIT_FAIL
    if verdict == INCONCLUSIVE and strict:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _threads() -> int:
    raw = os.environ.get("WFSW_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"WFSW_THREADS must be a non-negative integer, got {raw!r}") from None
    if n < 0:
        raise UsageError(f"WFSW_THREADS must be a non-negative integer, got {n}")
    return n


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _threads()  # checks run sequentially, which honours any cap
        inp = Inputs(args)
        report, data = DISPATCH[args.command](inp)
    except (io.LoadError, UsageError, CategoryError) as e:
        print(f"wfsw {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    doc = render_document(args.command, report, io.Namer(inp.category), data)
    sys.stdout.write(dumps(doc) if args.json else render_text(doc))
    return exit_status(report.verdict, args.strict)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success (including uncertified results and rejected proofs),
1 parse error, 2 semantic error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import ai as ai_mod
from .engine import (certify_degree, check_proof, extract_proof,
                     proof_from_json, syntactic_closure)
from .errors import (BudgetExceededError, GradedIneqError, MalformedModelError,
                     ParseError)
from .lattice import otimes, residuum
from .semantics import (DEFAULT_BUDGET, check_fuzzy_ordered_algebra,
                        enumerate_models, factor_algebra, load_model)
from .syntax import (generate_universe, parse_inequality, parse_theory,
                     render_term)

SCHEMA = 1


@dataclass
class SessionConfig:
    theory_path: str | None = None
    depth: int = 3
    model_size: int = 3
    budget: int = DEFAULT_BUDGET
    json_output: bool = False
    with_proof: bool = False
    strict: bool = False
    cap: int | None = None
    idempotent: bool = False


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_theory(path: str) -> tuple[str, object]:
    """Sniff whether a file is a core theory or an attribute theory."""
    text = _read_text(path)
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.split()[0] == "attributes":
            return "ai", ai_mod.parse_ai_theory(text)
        break
    return "core", parse_theory(text)


def _emit(config: SessionConfig, payload: dict, text_lines: list[str]) -> None:
    if config.json_output:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2,
                         ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _proof_lines(proof) -> list[str]:
    lines = ["proof:"]
    for k, step in enumerate(proof.steps):
        if isinstance(step.by, str):
            just = step.by
        else:
            just = step.by.rule + " " + ",".join(str(p) for p in step.by.premises)
            if step.by.subst:
                pairs = ", ".join(f"{x} -> {render_term(t)}"
                                  for x, t in step.by.subst)
                just += f" [{pairs}]"
        lines.append(f"  {k}: {step.ineq.render()} @ {step.degree.render()}"
                     f"  ({just})")
    return lines


def cmd_prove(config: SessionConfig, query: str) -> int:
    kind, theory = _load_theory(config.theory_path)
    if kind != "core":
        raise MalformedModelError("prove expects a core theory file; "
                                  "use `ai prove` for attribute theories")
    universe = generate_universe(theory.signature, theory.variables,
                                 config.depth)
    ineq = parse_inequality(query, theory.signature, theory.variables)
    state = syntactic_closure(theory.assumptions, universe)
    degree = state.degree_between(ineq)
    payload: dict = {"command": "prove", "query": ineq.render(),
                     "degree": degree.render(), "iterations": state.iterations,
                     "depth": config.depth}
    lines = [f"degree: {degree.render()}", f"iterations: {state.iterations}"]
    if config.with_proof:
        proof = extract_proof(state, ineq)
        from .engine import proof_to_json
        payload["proof"] = proof_to_json(proof)["steps"]
        lines += _proof_lines(proof)
    _emit(config, payload, lines)
    return 0


def cmd_certify(config: SessionConfig, query: str) -> int:
    kind, theory = _load_theory(config.theory_path)
    if kind != "core":
        raise MalformedModelError("certify expects a core theory file")
    universe = generate_universe(theory.signature, theory.variables,
                                 config.depth)
    ineq = parse_inequality(query, theory.signature, theory.variables)
    cert = certify_degree(theory.assumptions, ineq, universe,
                          config.model_size, config.budget)
    payload = {"command": "certify", "query": ineq.render(),
               "lower": cert.lower.render(),
               "upper": cert.upper.render() if cert.upper else None,
               "certified": cert.certified,
               "models": cert.model_count}
    lines = [f"lower: {cert.lower.render()}",
             f"upper: {cert.upper.render() if cert.upper else 'unavailable'}",
             f"certified: {str(cert.certified).lower()}",
             f"models: {cert.model_count}"]
    if cert.warning:
        payload["warning"] = cert.warning
        lines.append(f"warning: {cert.warning}")
    _emit(config, payload, lines)
    return 0


def cmd_closure(config: SessionConfig) -> int:
    kind, theory = _load_theory(config.theory_path)
    if kind != "core":
        raise MalformedModelError("closure expects a core theory file")
    universe = generate_universe(theory.signature, theory.variables,
                                 config.depth)
    state = syntactic_closure(theory.assumptions, universe)
    entries = [(ineq.render(), deg.render()) for ineq, deg in state.nonzero_items()]
    payload = {"command": "closure", "depth": config.depth,
               "universe_size": len(universe),
               "iterations": state.iterations,
               "entries": [{"ineq": e, "degree": d} for e, d in entries]}
    lines = [f"universe: {len(universe)} terms",
             f"iterations: {state.iterations}"]
    lines += [f"{e} @ {d}" for e, d in entries]
    _emit(config, payload, lines)
    return 0


def cmd_model_check(config: SessionConfig, model_path: str) -> int:
    try:
        data = json.loads(_read_text(model_path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file is not valid JSON: {exc}") from None
    algebra = load_model(data)
    report = check_fuzzy_ordered_algebra(algebra)
    checks = [("reflexive-antisymmetric", report.reflexive_antisymmetric),
              ("transitive", report.transitive),
              ("compatible", report.compatible)]
    payload = {"command": "model-check",
               "conditions": {name: {"ok": c.ok,
                                     "witness": _fmt_witness(c.witness)}
                              for name, c in checks},
               "passed": report.passed}
    lines = []
    for name, check in checks:
        verdict = "pass" if check.ok else f"fail at {_fmt_witness(check.witness)}"
        lines.append(f"{name}: {verdict}")
    lines.append(f"result: {'pass' if report.passed else 'fail'}")
    _emit(config, payload, lines)
    return 0


def _fmt_witness(witness) -> str | None:
    if witness is None:
        return None
    return ", ".join(render_term(w) if hasattr(w, "head") else str(w)
                     for w in witness)


def cmd_model_enumerate(config: SessionConfig, dump: bool = False) -> int:
    kind, theory = _load_theory(config.theory_path)
    if kind != "core":
        raise MalformedModelError("model enumerate expects a core theory file")
    from .semantics import dump_model
    counts: dict[int, int] = {}
    dumped: list[dict] = []
    for algebra in enumerate_models(theory.signature, theory.lattice,
                                    config.model_size, theory.assumptions,
                                    config.budget):
        counts[len(algebra.universe)] = counts.get(len(algebra.universe), 0) + 1
    total = sum(counts.values())
    payload = {"command": "model-enumerate", "max_size": config.model_size,
               "counts": {str(k): counts[k] for k in sorted(counts)},
               "total": total}
    lines = [f"size {k}: {counts[k]}" for k in sorted(counts)]
    lines.append(f"total: {total}")
    if dump:
        for algebra in enumerate_models(theory.signature, theory.lattice,
                                        config.model_size, theory.assumptions,
                                        config.budget):
            dumped.append(dump_model(algebra))
        payload["models"] = dumped
        lines += [json.dumps(m, ensure_ascii=False) for m in dumped]
    _emit(config, payload, lines)
    return 0


def cmd_model_canonical(config: SessionConfig) -> int:
    kind, theory = _load_theory(config.theory_path)
    if kind != "core":
        raise MalformedModelError("model canonical expects a core theory file")
    universe = generate_universe(theory.signature, theory.variables,
                                 config.depth)
    state = syntactic_closure(theory.assumptions, universe)
    result = factor_algebra(universe, state.to_relation())
    class_lines = []
    for cls in result.classes:
        rep = render_term(cls[0])
        members = ", ".join(render_term(t) for t in cls)
        class_lines.append((f"[{rep}]", members))
    order_entries = [(a, b, d.render())
                     for (a, b), d in sorted(result.algebra.order.items())]
    payload = {"command": "model-canonical", "depth": config.depth,
               "classes": [{"id": cid, "members": members}
                           for cid, members in class_lines],
               "partial": result.partial,
               "undefined_entries": result.undefined_entries,
               "order": [{"lhs": a, "rhs": b, "degree": d}
                         for a, b, d in order_entries]}
    lines = [f"classes: {len(class_lines)}"]
    lines += [f"  {cid} = {{{members}}}" for cid, members in class_lines]
    lines.append(f"partial: {str(result.partial).lower()} "
                 f"({result.undefined_entries} undefined entries)")
    lines += [f"{a} <= {b} @ {d}" for a, b, d in order_entries]
    _emit(config, payload, lines)
    return 0


def cmd_check_proof(config: SessionConfig, proof_path: str) -> int:
    kind, theory = _load_theory(config.theory_path)
    try:
        data = json.loads(_read_text(proof_path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"proof file is not valid JSON: {exc}") from None
    if kind == "core":
        assumptions = theory.assumptions
        lattice = theory.lattice
        signature, variables = theory.signature, theory.variables
    else:
        assumptions = ai_mod.AIAssumptionView(theory)
        lattice = theory.lattice
        signature = ai_mod.build_ai_signature(theory.attribute_set())
        variables = ()
    from .syntax import parse_term_text
    proof = proof_from_json(
        data, lattice,
        lambda s: parse_inequality(s, signature, variables),
        lambda s: parse_term_text(s, signature, variables))
    verdict = check_proof(proof, assumptions, strict=config.strict)
    payload = {"command": "check-proof", "accepted": verdict.ok,
               "failed_step": verdict.failed_step, "reason": verdict.reason,
               "strict": config.strict}
    if verdict.ok:
        lines = ["verdict: accept"]
    else:
        lines = ["verdict: reject",
                 f"step: {verdict.failed_step}",
                 f"reason: {verdict.reason}"]
    _emit(config, payload, lines)
    return 0


def _ai_setup(config: SessionConfig):
    kind, theory = _load_theory(config.theory_path)
    if kind != "ai":
        raise MalformedModelError("this command expects an attribute theory "
                                  "file (with an attributes block)")
    if config.idempotent:
        theory.idempotent = True
    cap = config.cap if config.cap is not None \
        else ai_mod.default_cap(theory.attributes)
    universe = ai_mod.ai_universe(theory.attributes, cap, theory.commutative,
                                  theory.idempotent)
    return theory, universe, cap


def cmd_ai_prove(config: SessionConfig, query: str) -> int:
    theory, universe, cap = _ai_setup(config)
    lhs, rhs = ai_mod.parse_ai_query(query, theory.attributes)
    closure = ai_mod.rule_system_closure(theory, universe, "TraCom")
    degree = closure.degree_of_words(lhs, rhs)
    payload = {"command": "ai-prove",
               "query": f"{ai_mod.render_word(lhs)} <= {ai_mod.render_word(rhs)}",
               "degree": degree.render(), "cap": cap,
               "idempotent": theory.idempotent}
    _emit(config, payload, [f"degree: {degree.render()}"])
    return 0


def cmd_ai_closure(config: SessionConfig) -> int:
    theory, universe, cap = _ai_setup(config)
    closure = ai_mod.rule_system_closure(theory, universe, "TraCom")
    entries = [(lhs, rhs, deg.render())
               for lhs, rhs, deg in closure.nonzero_items()]
    payload = {"command": "ai-closure", "cap": cap,
               "idempotent": theory.idempotent,
               "universe_size": universe.element_count(),
               "entries": [{"lhs": a, "rhs": b, "degree": d}
                           for a, b, d in entries]}
    lines = [f"universe: {universe.element_count()} normal forms (cap {cap})"]
    lines += [f"{a} <= {b} @ {d}" for a, b, d in entries]
    _emit(config, payload, lines)
    return 0


def cmd_ai_equiv(config: SessionConfig) -> int:
    theory, universe, cap = _ai_setup(config)
    closures = {system: ai_mod.rule_system_closure(theory, universe, system)
                for system in ai_mod.SYSTEMS}
    degrees = [closures[s].degrees for s in ai_mod.SYSTEMS]
    equivalent = degrees[0] == degrees[1] == degrees[2]
    payload = {"command": "ai-equiv-systems", "cap": cap,
               "equivalent": equivalent}
    if equivalent:
        lines = ["TraCom = TraAug = Cut: OK"]
    else:
        lines = ["TraCom = TraAug = Cut: MISMATCH"]
        for system in ai_mod.SYSTEMS[1:]:
            if closures[system].degrees != degrees[0]:
                lines.append(f"  {system} differs from TraCom")
    _emit(config, payload, lines)
    return 0


def cmd_lattice_show(config: SessionConfig) -> int:
    _, theory = _load_theory(config.theory_path)
    lattice = theory.lattice
    carrier = lattice.carrier()
    names = [d.render() for d in carrier]
    times = [[otimes(a, b).render() for b in carrier] for a in carrier]
    arrows = [[residuum(a, b).render() for b in carrier] for a in carrier]
    payload = {"command": "lattice-show", "lattice": lattice.describe(),
               "carrier": names,
               "otimes": times, "residuum": arrows}
    lines = [f"lattice: {lattice.describe()}",
             f"carrier: {' '.join(names)}"]

    def table(title: str, rows: list[list[str]]) -> list[str]:
        width = max(len(n) for n in names) + 1
        head = " " * width + "".join(n.rjust(width) for n in names)
        out = [f"{title}:", head]
        for name, row in zip(names, rows):
            out.append(name.rjust(width) + "".join(v.rjust(width) for v in row))
        return out

    lines += table("otimes", times)
    lines += table("residuum", arrows)
    _emit(config, payload, lines)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedineq",
        description="Exact reasoning about graded term inequalities")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, theory: bool = True) -> None:
        if theory:
            p.add_argument("theory", help="theory file")
        p.add_argument("--json", action="store_true", dest="json_output")

    p = sub.add_parser("prove", help="provability degree of a query")
    common(p)
    p.add_argument("query")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--proof", action="store_true")

    p = sub.add_parser("certify", help="sandwich an exact entailment degree")
    common(p)
    p.add_argument("query")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--model-size", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("closure", help="print the full syntactic closure")
    common(p)
    p.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("model", help="model utilities")
    model_sub = p.add_subparsers(dest="model_command", required=True)
    pc = model_sub.add_parser("check", help="check a model description file")
    pc.add_argument("model", help="model JSON file")
    pc.add_argument("--json", action="store_true", dest="json_output")
    pe = model_sub.add_parser("enumerate", help="count bounded models")
    common(pe)
    pe.add_argument("--model-size", type=int, default=3)
    pe.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pe.add_argument("--dump", action="store_true",
                    help="also print every model")
    pf = model_sub.add_parser("canonical",
                              help="factor the bounded closure")
    common(pf)
    pf.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("check-proof", help="verify an annotated proof file")
    common(p)
    p.add_argument("proof", help="proof JSON file")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("ai", help="graded attribute implications")
    ai_sub = p.add_subparsers(dest="ai_command", required=True)
    pp = ai_sub.add_parser("prove")
    common(pp)
    pp.add_argument("query")
    pp.add_argument("--cap", type=int)
    pp.add_argument("--idempotent", action="store_true")
    pl = ai_sub.add_parser("closure")
    common(pl)
    pl.add_argument("--cap", type=int)
    pl.add_argument("--idempotent", action="store_true")
    pq = ai_sub.add_parser("equiv-systems")
    common(pq)
    pq.add_argument("--cap", type=int)
    pq.add_argument("--idempotent", action="store_true")

    p = sub.add_parser("lattice", help="lattice utilities")
    lat_sub = p.add_subparsers(dest="lattice_command", required=True)
    ps = lat_sub.add_parser("show", help="print the degree tables")
    common(ps)

    return parser


def _config_from(args: argparse.Namespace) -> SessionConfig:
    config = SessionConfig()
    config.theory_path = getattr(args, "theory", None)
    config.depth = getattr(args, "depth", config.depth)
    config.model_size = getattr(args, "model_size", config.model_size)
    config.budget = getattr(args, "budget", config.budget)
    config.json_output = getattr(args, "json_output", False)
    config.with_proof = getattr(args, "proof", False)
    config.strict = getattr(args, "strict", False)
    config.cap = getattr(args, "cap", None)
    config.idempotent = getattr(args, "idempotent", False)
    if config.depth < 0 or config.model_size < 1 or config.budget < 1:
        raise ParseError("bounds must be positive")
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from(args)
        if args.command == "prove":
            return cmd_prove(config, args.query)
        if args.command == "certify":
            return cmd_certify(config, args.query)
        if args.command == "closure":
            return cmd_closure(config)
        if args.command == "model":
            if args.model_command == "check":
                return cmd_model_check(config, args.model)
            if args.model_command == "enumerate":
                return cmd_model_enumerate(config, dump=getattr(args, "dump", False))
            return cmd_model_canonical(config)
        if args.command == "check-proof":
            config.with_proof = True
            return cmd_check_proof(config, args.proof)
        if args.command == "ai":
            if args.ai_command == "prove":
                return cmd_ai_prove(config, args.query)
            if args.ai_command == "closure":
                return cmd_ai_closure(config)
            return cmd_ai_equiv(config)
        if args.command == "lattice":
            return cmd_lattice_show(config)
        parser.error(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 1
    except GradedIneqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

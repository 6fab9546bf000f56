"""Command-line interface: one canonical JSON document per invocation.

Exit codes: 0 success, 1 a result contradicted its expectation, 2 usage
or parse error, 3 ring cardinality cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .localization import parse_fraction
from .poly import parse_poly
from .ring import RingSpec, RingTooLargeError, ideal_from_generators, ideal_lattice, predicates
from .spectrum import LocIdeal, Member, Shape, loc_membership, max_spectrum_A
from .theorem_lab import (
    IDEAL_THEOREMS,
    THEOREMS,
    Certificate,
    Status,
    check_contraction,
    check_gaussian_slice,
    check_generator_count,
    check_locally_principal,
    check_pir2,
    check_vnr_prufer_slice,
    generator_search,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
PREDICATES = ("vnr", "reduced", "pir", "local", "field")


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- ideal specs -----------------------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        depth += ch in "(["
        depth -= ch in ")]"
        if ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_ideal_spec(spec: str, ring: RingSpec, degree_bound: int = 4) -> LocIdeal:
    """``"(g1,g2)"`` extension, ``"(g1,g2)+X"`` I+XR[X], ``"[p1; p2]"`` general."""
    text = spec.strip()
    if text.startswith("[") and text.endswith("]"):
        body = text[1:-1].strip()
        gens = [parse_poly(p, ring) for p in _split_top(body, ";")] if body else []
        return LocIdeal.general(gens, degree_bound, ring=ring)
    plus_x = False
    if text.upper().endswith("+X"):
        plus_x = True
        text = text[:-2].strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"malformed ideal spec {spec!r}")
    body = text[1:-1].strip()
    elems = []
    for g in (_split_top(body, ",") if body else []):
        p = parse_poly(g, ring)
        if len(p) > 1:
            raise ValueError(f"ideal generator {g!r} must be a constant")
        elems.append(p.constant_term)
    I = ideal_from_generators(ring, elems)
    return LocIdeal.i_plus_x(I) if plus_x else LocIdeal.extension(I)


# --- commands --------------------------------------------------------------------------------


@dataclass
class Result:
    payload: dict
    outcome: str
    ok: bool = True


def cmd_spectrum(ring: RingSpec, samples: int = 24, seed: int = 0) -> Result:
    report = max_spectrum_A(ring, samples=samples, seed=seed)
    return Result(report.to_json(), f"maximal={len(report.tops)}", report.ok)


def cmd_check(ring: RingSpec, predicate: str) -> Result:
    if predicate not in PREDICATES:
        raise UsageError(f"unknown predicate {predicate!r}; choose from {', '.join(PREDICATES)}")
    pred = predicates(ring)
    value = getattr(pred, f"is_{predicate}")
    return Result({"predicate": predicate, "predicates": pred.to_json(), "ring": str(ring), "value": value},
                  str(value).lower())


def cmd_member(fraction: str, ideal: str, ring: RingSpec | None = None, degree: int = 4) -> Result:
    x = parse_fraction(fraction, ring)
    J = parse_ideal_spec(ideal, x.ring, degree)
    verdict = loc_membership(x, J)
    payload = {"ideal": J.to_json(), "ring": str(x.ring), "x": str(x)}
    payload.update(verdict.to_json())
    ok = not isinstance(verdict, Member) or verdict.check()
    return Result(payload, payload["status"], ok)


def cmd_gen_search(ring: RingSpec, ideal: str, degree: int = 1) -> Result:
    J = parse_ideal_spec(ideal, ring)
    if J.shape is not Shape.I_PLUS_X:
        raise UsageError("gen-search needs an ideal spec of the form (g1,...)+X")
    result = generator_search(J, degree)
    payload = {"degree": degree, "ideal": J.to_json(), "ring": str(ring)}
    if isinstance(result, Certificate):
        payload.update({"certificate": result.to_json(), "status": "Certificate"})
        return Result(payload, f"generator={result.generator}", result.check())
    payload.update({"search": result.to_json(), "status": str(result)})
    return Result(payload, str(result))


def _worst(statuses: Sequence[str]) -> str:
    for prefix in (Status.REFUTED.value, Status.BOUNDED.value, Status.UNRESOLVED.value):
        for s in statuses:
            if s.startswith(prefix):
                return s
    return Status.VERIFIED.value


def cmd_theorem(theorem: str, ring: RingSpec, degree: int | None = None, trials: int = 200,
                seed: int = 0, ideal: str | None = None) -> Result:
    if theorem not in THEOREMS:
        raise UsageError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    ring.check_cap()
    if theorem in IDEAL_THEOREMS:
        if ideal is not None:
            J = parse_ideal_spec(ideal, ring)
            if J.shape is not Shape.EXTENSION:
                raise UsageError(f"theorem {theorem} takes an ideal of R, written (g1,...)")
            ideals = [J.ideal]
        else:
            ideals = ideal_lattice(ring)
        fn = {"generator-count": lambda I: check_generator_count(I, 2 if degree is None else degree),
              "contraction": check_contraction,
              "locally-principal": check_locally_principal}[theorem]
        verdicts = [fn(I) for I in ideals]
        if len(verdicts) == 1:
            v = verdicts[0]
            return Result(v.to_json(), v.status, v.agrees_with_theorem and v.recheck())
        status = _worst([v.status for v in verdicts])
        ok = all(v.agrees_with_theorem and v.recheck() for v in verdicts)
        payload = {"agrees_with_theorem": ok, "ring": str(ring), "status": status, "theorem": theorem,
                   "verdicts": [v.to_json() for v in verdicts]}
        return Result(payload, status, ok)
    if theorem == "pir2":
        v = check_pir2(ring, 1 if degree is None else degree)
    elif theorem == "gaussian":
        v = check_gaussian_slice(ring, trials, 6 if degree is None else degree, seed)
    else:
        v = check_vnr_prufer_slice(ring)
    return Result(v.to_json(), v.status, v.agrees_with_theorem and v.recheck())


# --- scenarios -------------------------------------------------------------------------------

_PARAMS = {
    "spectrum": {"samples", "seed"},
    "check": set(),
    "member": {"x", "ideal", "degree"},
    "gen-search": {"ideal", "degree"},
    "theorem": {"degree", "trials", "seed", "ideal"},
}
_INT_PARAMS = {"samples", "seed", "degree", "trials"}


class ScenarioParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Scenario:
    name: str
    ring: RingSpec
    command: tuple[str, ...]
    params: dict
    expected: str | None
    lineno: int

    def run(self) -> dict:
        out = {"command": " ".join(self.command), "line": self.lineno, "name": self.name, "ring": str(self.ring)}
        try:
            res = execute(self.command, self.ring, self.params)
            outcome, ok = res.outcome, res.ok
        except RingTooLargeError as e:
            outcome, ok = f"error: {e}", False
        if self.expected is not None:
            out["expected"] = self.expected
        out["outcome"] = outcome
        out["passed"] = ok and (self.expected is None or outcome == self.expected)
        return out


def execute(command: Sequence[str], ring: RingSpec, params: dict) -> Result:
    head, args = command[0], list(command[1:])
    if head == "spectrum":
        return cmd_spectrum(ring, params.get("samples", 24), params.get("seed", 0))
    if head == "check":
        return cmd_check(ring, args[0])
    if head == "member":
        return cmd_member(params["x"], params["ideal"], ring, params.get("degree", 4))
    if head == "gen-search":
        return cmd_gen_search(ring, params["ideal"], params.get("degree", 1))
    return cmd_theorem(args[0], ring, params.get("degree"), params.get("trials", 200), params.get("seed", 0),
                       params.get("ideal"))


def parse_scenarios(text: str) -> list[Scenario]:
    """Lines ``name | ring | command | params | expected``; ``#`` starts a comment."""
    out: list[Scenario] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise ScenarioParseError(lineno, f"expected 5 '|'-separated fields, got {len(fields)}")
        name, ring_text, command_text, param_text, expected = fields
        if not name:
            raise ScenarioParseError(lineno, "empty scenario name")
        if name in seen:
            raise ScenarioParseError(lineno, f"duplicate scenario name {name!r}")
        seen.add(name)
        try:
            ring = RingSpec.parse(ring_text)
            command = tuple(command_text.split())
            params = _parse_params(command, param_text)
        except ValueError as e:
            raise ScenarioParseError(lineno, str(e)) from None
        out.append(Scenario(name, ring, command, params, expected or None, lineno))
    return out


def _parse_params(command: tuple[str, ...], text: str) -> dict:
    if not command or command[0] not in _PARAMS:
        raise ValueError(f"unknown command {' '.join(command)!r}")
    head = command[0]
    arity = {"check": 2, "theorem": 2}.get(head, 1)
    if len(command) != arity:
        raise ValueError(f"command {head!r} takes {arity - 1} argument(s)")
    if head == "check" and command[1] not in PREDICATES:
        raise ValueError(f"unknown predicate {command[1]!r}")
    if head == "theorem" and command[1] not in THEOREMS:
        raise ValueError(f"unknown theorem {command[1]!r}")
    params = {}
    for tok in shlex.split(text):
        key, eq, value = tok.partition("=")
        if not eq or key not in _PARAMS[head]:
            raise ValueError(f"bad parameter {tok!r} for {head}")
        if key in _INT_PARAMS:
            try:
                params[key] = int(value)
            except ValueError:
                raise ValueError(f"parameter {key} must be an integer") from None
        else:
            params[key] = value
    required = {"member": {"x", "ideal"}, "gen-search": {"ideal"}}.get(head, set())
    if missing := required - params.keys():
        raise ValueError(f"missing parameter(s) {', '.join(sorted(missing))}")
    return params


def run_scenarios(path: str | Path, workers: int = 4) -> Result:
    scenarios = parse_scenarios(Path(path).read_text())
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(Scenario.run, scenarios))
    passed = sum(r["passed"] for r in rows)
    payload = {"failed": len(rows) - passed, "passed": passed, "scenarios": rows, "total": len(rows)}
    return Result(payload, f"{passed}/{len(rows)}", passed == len(rows))


# --- argv ------------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="anderson", description="Exact computations in R[X]_A over finite rings Z_n1 x ... x Z_nk.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", help="maximal and minimal primes of R[X]_A with certificates")
    s.add_argument("ring")
    s.add_argument("--samples", type=int, default=24)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("check", help="ring predicates")
    s.add_argument("ring")
    s.add_argument("predicate", choices=PREDICATES)

    s = sub.add_parser("member", help="membership of a fraction in an ideal of R[X]_A")
    s.add_argument("fraction", help='e.g. "(X+2)/(2X+1)@Z6:A"')
    s.add_argument("ideal", help='"(g1,g2)", "(g1,g2)+X" or "[p1; p2]"')
    s.add_argument("--degree", type=int, default=4)

    s = sub.add_parser("gen-search", help="search for a single generator of (I+XR[X])_A")
    s.add_argument("ring")
    s.add_argument("ideal")
    s.add_argument("--degree", type=int, default=1)

    s = sub.add_parser("theorem", help="run a theorem checker")
    s.add_argument("id", choices=THEOREMS)
    s.add_argument("ring")
    s.add_argument("--degree", type=int)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--ideal")

    s = sub.add_parser("scenarios", help="run a scenario file")
    s.add_argument("file")
    return p


def run_command(argv: Sequence[str]) -> tuple[int, str]:
    """Run one invocation; return the exit code and the JSON text."""
    try:
        args = build_parser().parse_args(list(argv))
        if args.cmd == "scenarios":
            res = run_scenarios(args.file)
        elif args.cmd == "member":
            res = cmd_member(args.fraction, args.ideal, degree=args.degree)
        else:
            ring = RingSpec.parse(args.ring)
            ring.check_cap()
            if args.cmd == "spectrum":
                res = cmd_spectrum(ring, args.samples, args.seed)
            elif args.cmd == "check":
                res = cmd_check(ring, args.predicate)
            elif args.cmd == "gen-search":
                res = cmd_gen_search(ring, args.ideal, args.degree)
            else:
                res = cmd_theorem(args.id, ring, args.degree, args.trials, args.seed, args.ideal)
    except RingTooLargeError as e:
        return EXIT_CAP, dumps({"error": str(e), "kind": "cap"})
    except ScenarioParseError as e:
        return EXIT_USAGE, dumps({"error": str(e), "kind": "parse", "line": e.lineno})
    except (UsageError, ValueError, ArithmeticError, OSError) as e:
        return EXIT_USAGE, dumps({"error": str(e), "kind": "usage"})
    return (EXIT_OK if res.ok else EXIT_REFUTED), dumps(res.payload)


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: verification suites with text or JSON reports.

Every subcommand runs a suite of named checks and prints one line per
check (or a JSON document with ``--json``).  Exit status: 0 when every
check passed, 1 on any failure, 2 on usage errors, 3 when an explicitly
requested enumeration hit the resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field as dc_field

from .clifford import (
    PinRep,
    center_report,
    check_power_identities,
    conjugation_matrix,
    kernel_element,
    spinor_norm,
)
from .errors import MismatchError, InconclusiveError
from .ortho import OrthoRep, conjugate_power_matrix, entries_are_t_polynomials
from .presentation import evaluate, schedule, s_letter
from .quadspace import (
    QuadSpace,
    bilin,
    hyperbolic_decompose,
    q_eval,
    rmat_lower_laurent,
)
from .rings import L_ONE, S, cyclotomic_split
from .spinor import (
    check_action,
    check_extended_action,
    independence_certificate,
    spinor_basis,
    SpinorRep,
)
from .spectool import augmentation_components, small_cases_check


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skip
    expected: str | None = None
    actual: str | None = None
    detail: str | None = None

    def to_json(self):
        return {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "detail": self.detail,
        }


@dataclass
class RunReport:
    command: str
    params: dict
    checks: list = dc_field(default_factory=list)
    elapsed_ms: int = 0
    cap_hit: bool = False

    def add(self, name, ok, expected=None, actual=None, detail=None):
        self.checks.append(
            CheckResult(
                name,
                "pass" if ok else "fail",
                expected=expected,
                actual=actual,
                detail=detail,
            )
        )

    def skip(self, name, detail=None):
        self.checks.append(CheckResult(name, "skip", detail=detail))

    @property
    def exit_code(self):
        if any(c.status == "fail" for c in self.checks):
            return 1
        if self.cap_hit:
            return 3
        return 0

    def to_json(self):
        return {
            "command": self.command,
            "params": {k: str(v) for k, v in self.params.items()},
            "checks": [c.to_json() for c in self.checks],
            "elapsed_ms": self.elapsed_ms,
        }

    def render_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{c.status}] {c.name}"
            if c.status == "fail" and (c.expected or c.actual):
                line += f" (expected {c.expected}, got {c.actual})"
            if c.detail:
                line += f"  -- {c.detail}"
            lines.append(line)
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            counts[c.status] += 1
        lines.append(
            f"{self.command}: {counts['pass']} passed, {counts['fail']} failed, "
            f"{counts['skip']} skipped ({self.elapsed_ms} ms)"
        )
        return "\n".join(lines)


def _guarded(report, name, fn, expected=None):
    """Run a check body that raises on failure."""
    try:
        fn()
        report.add(name, True, expected=expected)
    except (MismatchError, InconclusiveError, ArithmeticError, ValueError) as exc:
        report.add(name, False, expected=expected, actual=None, detail=str(exc))


# -- suites -----------------------------------------------------------------


def _suite_relations(args, report):
    reps = []
    if args.rep in ("phi", "both", "all"):
        reps.append(("phi", OrthoRep(QuadSpace(args.m)), "y-tilde"))
    if args.rep in ("psi", "both", "all"):
        reps.append(("psi", PinRep(args.m), "y-tilde"))
    if args.rep in ("eta", "all"):
        reps.append(("eta", SpinorRep(args.m), "y"))
    for label, rep, flavor in reps:
        sched = schedule(args.m, args.kmax, flavor)
        for name, word in sched:
            value = evaluate(word, rep)
            ok = getattr(value, "is_identity", False)
            report.add(
                f"{label}/m={args.m}/{name}",
                bool(ok),
                expected="identity",
                actual=None if ok else "non-identity",
            )


def _suite_lifting(args, report):
    phi = OrthoRep(QuadSpace(args.m))
    psi = PinRep(args.m)
    letters = phi.letters()
    for letter in letters:
        ok = conjugation_matrix(psi.image(letter)) == phi.image(letter)
        report.add(f"lifting/m={args.m}/generator_{letter}", ok)
        norm = spinor_norm(psi.image(letter))
        report.add(
            f"pin_norm/m={args.m}/generator_{letter}",
            norm.is_one,
            expected="1",
            actual=str(norm),
        )
    rng = random.Random(args.seed)
    bad = None
    for i in range(args.words):
        word = tuple(
            rng.choice(letters) for _ in range(rng.randint(0, args.maxlen))
        )
        if conjugation_matrix(evaluate(word, psi)) != evaluate(word, phi):
            bad = word
            break
    report.add(
        f"lifting/m={args.m}/random_words(count={args.words},maxlen={args.maxlen})",
        bad is None,
        detail=None if bad is None else f"first failing word {''.join(bad)}",
    )


def _suite_closed_form(args, report):
    space = QuadSpace(args.m)
    phi = OrthoRep(space)
    s1 = (s_letter(1),)
    for k in range(0, args.kmax + 1):
        word = ("A",) * k + s1 + ("a",) * k
        oracle = evaluate(word, phi)
        closed = rmat_lower_laurent(conjugate_power_matrix(space, k))
        report.add(
            f"closed_form/m={args.m}/k={k}",
            closed == oracle,
            expected="iterated conjugate",
        )
        report.add(
            f"closed_form_entries_in_t/m={args.m}/k={k}",
            entries_are_t_polynomials(closed),
        )


def _suite_powers(args, report):
    for k in range(0, args.kmax + 1):
        _guarded(report, f"power_identities/k={k}", lambda k=k: check_power_identities(k))


def _suite_basis(args, report):
    _guarded(
        report,
        f"basis_independence/m={args.m}",
        lambda: independence_certificate(spinor_basis(args.m)),
    )
    _guarded(report, f"matrix_action/m={args.m}", lambda: check_action(args.m))


def _suite_center(args, report):
    rep = center_report(args.m, n=args.n)
    if args.m % 2 == 0:
        report.add(
            f"center_radical_central/m={args.m}",
            rep.radical_is_central,
            expected="central",
        )
        expected_dim = 2
    else:
        report.add(
            f"center_radical_not_central/m={args.m}",
            not rep.radical_is_central,
            expected="non-central",
            detail=f"witness generator {rep.witness}",
        )
        expected_dim = 1
    report.add(
        f"center_specialized_dim/m={args.m}",
        rep.specialized_dim == expected_dim,
        expected=str(expected_dim),
        actual=str(rep.specialized_dim),
    )
    if args.m % 2 == 0:
        for lam, label in ((S, "s"), (L_ONE, "1")):
            z = kernel_element(args.m, lam)
            report.add(
                f"kernel_element/m={args.m}/lam={label}",
                not z.is_identity,
                expected="non-trivial element of ker(pi) inside pin",
            )


def _suite_extended(args, report):
    _guarded(
        report, f"extended_action/m={args.m}", lambda: check_extended_action(args.m)
    )


def _cmd_verify(args) -> RunReport:
    report = RunReport(
        command=f"verify {args.suite}", params=_param_dict(args)
    )
    suite = {
        "relations": _suite_relations,
        "lifting": _suite_lifting,
        "closed-form": _suite_closed_form,
        "powers": _suite_powers,
        "basis": _suite_basis,
        "center": _suite_center,
        "extended": _suite_extended,
    }[args.suite]
    suite(args, report)
    return report


def _cmd_decompose(args) -> RunReport:
    report = RunReport(command="decompose", params=_param_dict(args))
    m = args.rank - 1
    space = QuadSpace(m)
    dec = hyperbolic_decompose(space)
    labels = space.basis_labels()

    def vec_str(v):
        names = [labels[i] for i, c in enumerate(v) if c]
        return "+".join(names) if names else "0"

    for idx, (e, f) in enumerate(dec.pairs, start=1):
        ok = (
            not q_eval(space, e)
            and not q_eval(space, f)
            and bilin(space, e, f).is_one
        )
        report.add(
            f"pair_{idx}",
            ok,
            expected="q(e)=q(f)=0, (e,f)=1",
            detail=f"e={vec_str(e)}, f={vec_str(f)}",
        )
    report.add(
        "residual_rank",
        len(dec.residual) in (2, 3),
        expected="2 or 3",
        actual=str(len(dec.residual)),
        detail="q-values " + ", ".join(str(q) for q in dec.residual_q),
    )
    report.add(
        "state_sequence",
        True,
        detail=" -> ".join(
            "(" + ", ".join(s.str_t() for s in st) + ")" for st in dec.states
        ),
    )
    return report


def _cmd_specialize(args) -> RunReport:
    report = RunReport(command="specialize", params=_param_dict(args))
    mode = "force" if args.enumerate else "auto"
    threads = int(os.environ.get("YTWO_THREADS", args.threads))
    g = small_cases_check(
        args.m, args.n, cap=args.cap, threads=threads, enumerate_mode=mode
    )
    report.add(
        f"relators_specialized/m={args.m}/n={args.n}",
        True,
        detail=f"map {g.map_desc}",
    )
    report.add(
        "a_order_phi", g.a_order_phi == args.n, expected=str(args.n),
        actual=str(g.a_order_phi),
    )
    report.add(
        "a_order_eta", g.a_order_eta == args.n, expected=str(args.n),
        actual=str(g.a_order_eta),
    )
    expected_radical = 1 if args.m % 2 == 0 else 0
    report.add(
        "radical_rank",
        g.radical_rank == expected_radical,
        expected=str(expected_radical),
        actual=str(g.radical_rank),
    )
    if g.q_radical is not None:
        expected_qr = 0 if args.m % 4 == 2 else 1
        report.add(
            "q_radical", g.q_radical == expected_qr,
            expected=str(expected_qr), actual=str(g.q_radical),
        )
    report.add(
        "dickson_b_generators",
        all(v == 0 for v in g.dickson_values.values()),
        expected="0 (even transvection count)",
        actual=str(g.dickson_values),
        detail="caveat: degenerate form" if g.dickson_caveat else None,
    )
    if g.enumeration == "ran":
        for label, order in (("phi", g.order_phi), ("eta", g.order_eta)):
            if g.expected_order is None:
                report.add(f"group_order_{label}", True, actual=str(order))
            else:
                report.add(
                    f"group_order_{label}",
                    order == g.expected_order,
                    expected=str(g.expected_order),
                    actual=str(order),
                )
    elif g.enumeration == "cap":
        report.skip("group_order", detail=f"cap {args.cap} exceeded")
        report.cap_hit = bool(args.enumerate)
    else:
        report.skip(
            "group_order",
            detail=(
                "expected order "
                + (str(g.expected_order) if g.expected_order else "unknown")
                + f" exceeds cap {args.cap}; structural checks only"
            ),
        )
    return report


def _cmd_augmentation(args) -> RunReport:
    report = RunReport(command="augmentation", params=_param_dict(args))
    degrees = cyclotomic_split(args.n)
    report.add(
        f"split_degree_sum/n={args.n}",
        sum(degrees) == args.n - 1,
        expected=str(args.n - 1),
        actual=str(sum(degrees)),
        detail=f"degrees {degrees}",
    )
    comps = augmentation_components(args.n)
    report.add(
        f"component_fields/n={args.n}",
        sorted(c.field.degree for c in comps) == degrees,
        expected=str(degrees),
        actual=str(sorted(c.field.degree for c in comps)),
    )
    return report


def _param_dict(args) -> dict:
    skip = {"func", "json", "suite", "command"}
    return {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in skip and v is not None
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ytwo",
        description="Exact verification suites for the characteristic-two "
        "quadratic module, its Clifford algebra, and their finite "
        "specializations.",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit a JSON report")
    shared.add_argument(
        "--seed", type=int, default=42, help="seed for randomized suites"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an exact verification suite")
    vsub = p_verify.add_subparsers(dest="suite", required=True)

    def common(p, m=True, kmax=None, n=None):
        if m:
            p.add_argument("--m", type=int, default=4, help="rank parameter (>= 3)")
        if kmax is not None:
            p.add_argument("--kmax", type=int, default=kmax)
        if n is not None:
            p.add_argument("--n", type=int, default=n)
        p.set_defaults(func=_cmd_verify)

    common(vsub.add_parser("relations", parents=[shared]), kmax=20)
    vsub.choices["relations"].add_argument(
        "--rep", choices=("phi", "psi", "eta", "both", "all"), default="both"
    )
    p_lift = vsub.add_parser("lifting", parents=[shared])
    common(p_lift)
    p_lift.add_argument("--words", type=int, default=200)
    p_lift.add_argument("--maxlen", type=int, default=30)
    common(vsub.add_parser("closed-form", parents=[shared]), kmax=20)
    common(vsub.add_parser("powers", parents=[shared]), m=False, kmax=50)
    common(vsub.add_parser("basis", parents=[shared]))
    common(vsub.add_parser("center", parents=[shared]), n=5)
    common(vsub.add_parser("extended", parents=[shared]))

    p_dec = sub.add_parser("decompose", parents=[shared], help="hyperbolic pair extraction")
    p_dec.add_argument("--rank", type=int, required=True, help="module rank m+1")
    p_dec.set_defaults(func=_cmd_decompose)

    p_spec = sub.add_parser("specialize", parents=[shared], help="finite-field small-cases report")
    p_spec.add_argument("--m", type=int, required=True)
    p_spec.add_argument("--n", type=int, required=True)
    p_spec.add_argument("--enumerate", action="store_true")
    p_spec.add_argument("--cap", type=int, default=2_000_000)
    p_spec.add_argument("--threads", type=int, default=1)
    p_spec.set_defaults(func=_cmd_specialize)

    p_aug = sub.add_parser("augmentation", parents=[shared], help="cyclotomic splitting report")
    p_aug.add_argument("--n", type=int, required=True)
    p_aug.set_defaults(func=_cmd_augmentation)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    report = args.func(args)
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.render_text())
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

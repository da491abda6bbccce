"""Command-line surface: oracles, certifiers, generators, finders, and the
trusted verifier over the digraph/certificate file formats.

Exit codes: 0 success, 2 precondition violated, 3 budget exceeded,
4 verification failed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import constructions
from .certificates import (
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
)
from .cycles import parse_spec
from .digraph import from_text, to_text
from .errors import (
    BudgetExceededError,
    CyclewrightError,
    InfeasibleParametersError,
    PreconditionError,
)
from .handles import certify_C12, certify_C13, certify_C22, certify_C23
from .hamiltonian import (
    ChordedCycle,
    certify_hamiltonian_ck1,
    certify_hamiltonian_ckk,
    certify_strong_ck1,
)
from .leveling_colorers import (
    certify_hatC4,
    certify_two_blocks_strong,
    certify_two_strong,
)
from .oracles import (
    SearchBudget,
    chromatic_number_exact,
    find_subdivision,
    longest_directed_cycle,
    min_blocks_over_cycles,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


def _budget(args) -> SearchBudget:
    default_nodes = int(os.environ.get("CYCLEWRIGHT_BUDGET", 5_000_000))
    return SearchBudget(
        node_limit=args.node_budget if args.node_budget else default_nodes,
        time_limit=args.time_budget if args.time_budget else 120.0,
        seed=args.seed or 0,
    )


def _read_digraph(args):
    if args.input in (None, "-"):
        return from_text(sys.stdin.read())
    with open(args.input, "r", encoding="utf-8") as fh:
        return from_text(fh.read())


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_certificate(cert, d, args) -> int:
    if cert.kind == "diagnostic":
        _emit(certificate_to_json(cert), args)
        print("diagnostic certificate emitted", file=sys.stderr)
        return EXIT_VERIFY
    if not verify_certificate(d, cert):
        print("refusing to write an unverified certificate", file=sys.stderr)
        return EXIT_VERIFY
    _emit(certificate_to_json(cert), args)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cyclewright")
    top.add_argument("-i", "--input", help="digraph file (default stdin)")
    top.add_argument("-o", "--output", help="output file (default stdout)")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--node-budget", type=int, default=None)
    top.add_argument("--time-budget", type=float, default=None)
    top.add_argument("-k", type=int, default=None)
    top.add_argument("-l", "--ell", type=int, default=None)
    top.add_argument("-b", type=int, default=None)
    top.add_argument("-c", type=int, default=None)
    sub = top.add_subparsers(dest="command", required=True)

    oracle = sub.add_parser("oracle", help="exact brute-force queries")
    oracle.add_argument("what", choices=["chi", "subdiv", "blocks", "longest-cycle"])
    oracle.add_argument("--spec", help="cycle spec for subdiv, e.g. C(2,3)")

    certify = sub.add_parser("certify", help="run a certifying theorem")
    certify.add_argument(
        "theorem",
        choices=[
            "thm:Ckk", "thm:hatC", "thm:2strong", "thm:k1",
            "phi:kk", "phi:k1", "C12", "C22", "C13", "C23",
        ],
    )

    find = sub.add_parser("find", help="constructive searches")
    find.add_argument("family", choices=["antidirected", "two-block-path"])
    find.add_argument("--sign", choices=["+", "-"], default="+")

    generate = sub.add_parser("generate", help="instance generators")
    generate.add_argument(
        "family",
        choices=["tt", "dicycle", "complete", "tournament", "strong", "ham-span", "blocks"],
    )
    generate.add_argument("-n", type=int, default=None)
    generate.add_argument("-m", type=int, default=None)
    generate.add_argument("--max-span", type=int, default=2)
    generate.add_argument("--density", type=float, default=0.3)

    verify = sub.add_parser("verify", help="check a certificate file")
    verify.add_argument("certificate")

    embed = sub.add_parser("embed", help="embed a cycle into a k-strong digraph")
    embed.add_argument("--spec", required=True)

    return top


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (PreconditionError, InfeasibleParametersError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CyclewrightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def _dispatch(args) -> int:
    budget = _budget(args)
    if args.command == "oracle":
        d = _read_digraph(args)
        if args.what == "chi":
            print(chromatic_number_exact(d, budget, n_limit=max(20, d.n)))
        elif args.what == "subdiv":
            if not args.spec:
                print("--spec required", file=sys.stderr)
                return EXIT_PRECONDITION
            outcome = find_subdivision(d, parse_spec(args.spec), budget)
            print(outcome.status)
            if outcome.status == "exhausted":
                return EXIT_BUDGET
        elif args.what == "blocks":
            value = min_blocks_over_cycles(d, budget)
            print("infinite" if value == math.inf else value)
        else:
            cyc = longest_directed_cycle(d, budget)
            print("none" if cyc is None else " ".join(map(str, cyc)))
        return EXIT_OK

    if args.command == "certify":
        d = _read_digraph(args)
        k = args.k
        ell = args.ell
        name = args.theorem
        if name == "thm:Ckk":
            cert = certify_two_blocks_strong(d, k or 3, ell or 2, budget)
        elif name == "thm:hatC":
            cert = certify_hatC4(d, budget)
        elif name == "thm:2strong":
            cert = certify_two_strong(d, k or 3, ell or 2, budget)
        elif name == "thm:k1":
            cert = certify_strong_ck1(d, k or 3, budget)
        elif name in ("phi:kk", "phi:k1"):
            cyc = longest_directed_cycle(d, budget)
            if cyc is None or len(cyc) != d.n:
                raise PreconditionError("digraph has no Hamiltonian directed cycle")
            cc = ChordedCycle(d, tuple(cyc))
            if name == "phi:kk":
                cert = certify_hamiltonian_ckk(cc, k or 3, budget)
            else:
                cert = certify_hamiltonian_ck1(cc, k or 3, budget)
        elif name == "C12":
            cert = certify_C12(d, budget)
        elif name == "C22":
            cert = certify_C22(d, budget)
        elif name == "C13":
            cert = certify_C13(d, budget)
        else:
            cert = certify_C23(d, budget)
        return _emit_certificate(cert, d, args)

    if args.command == "find":
        d = _read_digraph(args)
        if args.family == "antidirected":
            from .antidirected import find_antidirected

            w = find_antidirected(d, args.k or 2)
            from .certificates import witness_certificate

            return _emit_certificate(witness_certificate("thm:antidirected", {"k": args.k or 2}, w), d, args)
        from .oracles import find_two_block_path

        path = find_two_block_path(d, args.sign, args.k or 1, args.ell or 1, budget)
        print("absent" if path is None else " ".join(map(str, path)))
        return EXIT_OK

    if args.command == "generate":
        fam = args.family
        if fam == "tt":
            d = constructions.transitive_tournament(args.n or 4)
        elif fam == "dicycle":
            d = constructions.directed_cycle(args.n or 5)
        elif fam == "complete":
            d = constructions.complete_digraph(args.n or 4)
        elif fam == "tournament":
            d = constructions.random_tournament(args.n or 7, args.seed)
        elif fam == "strong":
            n = args.n or 8
            d = constructions.random_strong_digraph(n, args.m or 2 * n, args.seed)
        elif fam == "ham-span":
            d = constructions.hamiltonian_with_bounded_span(
                args.n or 9, args.max_span, args.density, args.seed
            )
        else:
            d = constructions.build_blocks_digraph(args.b or 2, args.c or 3, budget)
        _emit(to_text(d), args)
        return EXIT_OK

    if args.command == "verify":
        d = _read_digraph(args)
        with open(args.certificate, "r", encoding="utf-8") as fh:
            cert = certificate_from_json(fh.read())
        ok = verify_certificate(d, cert)
        print("valid" if ok else "INVALID")
        return EXIT_OK if ok else EXIT_VERIFY

    if args.command == "embed":
        d = _read_digraph(args)
        w = constructions.embed_cycle_in_k_strong(d, parse_spec(args.spec))
        from .certificates import witness_certificate

        return _emit_certificate(
            witness_certificate("prop:existe", {}, w), d, args
        )
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

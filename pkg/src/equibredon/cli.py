"""Command-line entry point: ``equibredon <command> WORKSPACE [options]``.

Exit codes: 0 success, 1 invalid input, 2 internal computation failure,
3 a verification step failed.
"""

import argparse
import sys

from .bredon import assemble_complex, cohomology, verify_morita
from .coeff import (
    check_natural_iso,
    constant_system,
    offset_section,
    pullback,
    pushforward,
    section_change_components,
    sigma_right_inverse,
)
from .errors import EquiError, ValidationError, VerificationError
from .fundcat import build_presentation, describe_generator, induced_functor
from .morita import bibundle_from_functor, check_biprincipal, legs_as_functors
from .workspace import Workspace, dump_document, system_to_entry


def _system_on(ws, system, action):
    """Resolve (action name, system) from optional names; constant Z by default."""
    if system is None:
        if action is None:
            raise ValidationError("USAGE", "give --system or --action")
        return action, constant_system(ws.presentation(action))
    owner = ws.system_action(system)
    if action is not None and action != owner:
        raise ValidationError("TYPE_MISMATCH", f"system {system!r} lives on {owner!r}, not {action!r}")
    return owner, ws.system(system)


def _describe_system(A):
    name = A.presentation.X.complex.name
    lines = ["nonzero values:"]
    for o in A.nonzero_objects():
        lines.append(f"  ({name(o.vertex)}, {list(o.subgroup.elements)}) = {A.value(o)}")
    lines.append("nonzero transports:")
    for a in A.presentation.generators:
        f = A.action(a)
        if f.source.generator_count and f.target.generator_count:
            lines.append(f"  {describe_generator(a, name)}: {f.matrix.to_lists()}")
    return lines


def cmd_validate(ws, args):
    for line in ws.validate_all():
        print(line)
    print("OK")


def cmd_cohomology(ws, args):
    action, A = _system_on(ws, args.system, args.action)
    result = cohomology(assemble_complex(ws.action(action), A, args.max_dim))
    if args.json:
        print(dump_document(result.to_document()), end="")
    else:
        print(result.text())


def cmd_pullback(ws, args):
    fe = ws.raw["functors"].get(args.functor)
    if fe is None:
        raise ValidationError("UNKNOWN_NAME", f"no functor {args.functor!r}")
    if ws.system_action(args.system) != fe["target"]:
        raise ValidationError("TYPE_MISMATCH", "system does not live on the functor target")
    A = ws.system(args.system)
    F = induced_functor(ws.functor(args.functor), ws.presentation(fe["source"]), A.presentation)
    pulled = pullback(F, A)
    name = args.name or f"{args.system}_pulled_{args.functor}"
    print(f"pullback of {args.system} along {args.functor} on action {fe['source']}")
    for line in _describe_system(pulled):
        print(line)
    if args.output:
        ws.add_system(name, system_to_entry(pulled, fe["source"]))
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(ws.serialize())
        print(f"wrote {args.output} (system {name})")


def _right_system(ws, bib, system):
    left, right = ws.bibundle_sides(bib)
    if ws.system_action(system) != right:
        raise ValidationError("TYPE_MISMATCH", f"system {system!r} must live on {right!r}")
    return left, right, ws.system(system)


def cmd_pushforward(ws, args):
    B = ws.bibundle(args.bibundle)
    left, _, A = _right_system(ws, args.bibundle, args.system)
    rep = check_biprincipal(B)
    if not rep.passed:
        raise VerificationError("NOT_BIPRINCIPAL", rep.failures[0])
    PX, PZ = build_presentation(B.left), build_presentation(B.total)
    _, rho = legs_as_functors(B)
    rhoA = pullback(induced_functor(rho, PZ, A.presentation), A)
    seeds = args.section or [0]
    sigmas, pushed, results = [], [], []
    for k in seeds:
        sigma = sigma_right_inverse(B, PX, PZ, offset_section(B, k))
        P = pushforward(B, rhoA, sigma=sigma)
        sigmas.append(sigma)
        pushed.append(P)
        results.append(cohomology(assemble_complex(B.left, P)))
        entry = system_to_entry(P, left)
        print(f"# pushforward of {args.system} across {args.bibundle}, section {k}")
        print(dump_document({"format": 1, "systems": {f"{args.system}_pushed_{k}": entry}}), end="")
        print(f"# cohomology: {results[-1].text()}")
    if len(seeds) > 1:
        ok = True
        for s2, p2, r2 in zip(sigmas[1:], pushed[1:], results[1:]):
            comps = section_change_components(B, rhoA, sigmas[0], s2)
            if check_natural_iso(pushed[0], p2, comps) is None or r2.canonical() != results[0].canonical():
                ok = False
        print(f"naturally isomorphic: {'yes' if ok else 'no'}")
        if not ok:
            raise VerificationError("SECTION_DEPENDENCE", "pushforwards along different sections disagree")


def cmd_check_biprincipal(ws, args):
    if args.bibundle:
        B = ws.bibundle(args.bibundle)
    elif args.functor:
        B = bibundle_from_functor(ws.functor(args.functor))
    else:
        raise ValidationError("USAGE", "give --bibundle or --functor")
    rep = check_biprincipal(B)
    for label, ok in rep.checks:
        print(f"{'ok  ' if ok else 'FAIL'} {label}")
    print(rep.summary())
    if not rep.passed:
        raise VerificationError("NOT_BIPRINCIPAL", rep.failures[0])


def cmd_verify_morita(ws, args):
    B = ws.bibundle(args.bibundle)
    _, _, A = _right_system(ws, args.bibundle, args.system)
    report = verify_morita(B, A, args.max_dim)
    print(report.text(), end="")
    if not report.isomorphic:
        raise VerificationError("NOT_ISOMORPHIC", "induced maps are not all isomorphisms")


def cmd_fundcat_dump(ws, args):
    print(ws.presentation(args.action).dump(), end="")


def build_parser():
    p = argparse.ArgumentParser(prog="equibredon", description="Twisted Bredon-Illman cohomology of finite actions.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("workspace", help="workspace document (JSON, format 1)")
        sp.add_argument("--subdivide", action="store_true", help="repair non-admissible actions by subdivision")
        sp.set_defaults(func=func)
        return sp

    command("validate", cmd_validate, "check every entry of a workspace")
    sp = command("cohomology", cmd_cohomology, "cohomology of an action with a coefficient system")
    sp.add_argument("--action")
    sp.add_argument("--system")
    sp.add_argument("--max-dim", type=int)
    sp.add_argument("--json", action="store_true")
    sp = command("pullback", cmd_pullback, "pull a system back along a functor")
    sp.add_argument("--functor", required=True)
    sp.add_argument("--system", required=True)
    sp.add_argument("--name")
    sp.add_argument("--output")
    sp = command("pushforward", cmd_pushforward, "transport a system across a bibundle")
    sp.add_argument("--bibundle", required=True)
    sp.add_argument("--system", required=True)
    sp.add_argument("--section", type=int, action="append", help="fiber offset of the section (repeatable)")
    sp = command("check-biprincipal", cmd_check_biprincipal, "certify a bibundle as biprincipal")
    sp.add_argument("--bibundle")
    sp.add_argument("--functor")
    sp = command("verify-morita", cmd_verify_morita, "check Morita invariance of cohomology")
    sp.add_argument("--bibundle", required=True)
    sp.add_argument("--system", required=True)
    sp.add_argument("--max-dim", type=int)
    sp = command("fundcat-dump", cmd_fundcat_dump, "print the fundamental category presentation")
    sp.add_argument("--action", required=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ws = Workspace.from_file(args.workspace, subdivide=args.subdivide)
        args.func(ws, args)
    except EquiError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

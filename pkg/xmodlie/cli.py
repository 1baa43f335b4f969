"""
Command line driver: ``xmodlie verify|analyze|tensor|uce|classify|demo``.
"""

import argparse
import logging
import sys

import colorama

from .braid import (
    BraidedMorphism,
    BraidedXMod,
    BraidingError,
    braided_center,
    braided_commutator,
    classify_braided_extension,
    is_perfect_braided,
    non_perfect_witness,
)
from .exactla import DimensionError
from .liealg import LieAlgebraError, adjoint_action, center, derived_subalgebra
from .natensor import TensorProductError, build_nonabelian_tensor, tensor_dim_oracle
from .report import Report
from .uce import (
    ConstructionError,
    check_perfect_base_equalities,
    compare_uce,
    compatible_uce,
    corollary_dims,
    h2_like_invariants,
    tensor_square_xmod,
    universal_central_extension,
    uniqueness_probe,
)
from .workspace import (
    AxiomError,
    ParseError,
    ResolutionError,
    corpus_path,
    load,
)
from .xmod import (
    Action,
    CrossedModuleError,
    classify_xmod_extension,
    fixed_points,
    is_perfect_xmod,
    stabilizer,
    xmod_center,
    xmod_commutator,
)

logger = logging.getLogger(__name__)

DEMOS = ("k2k3", "uce-theorem", "sl2-corollary")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xmodlie",
        description="Braided crossed modules of Lie algebras over exact rationals.",
    )
    parser.add_argument(
        "--input",
        "-i",
        action="append",
        default=[],
        metavar="FILE",
        help="definition file (repeatable); shipped corpus names are accepted",
    )
    parser.add_argument(
        "--format", choices=["human", "machine"], default="human", help="report rendering"
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="stop loading at the first object that fails its verifier",
    )
    parser.add_argument(
        "--verbose", "-v", action="count", default=0, help="log INFO (-v) or DEBUG (-vv)"
    )
    parser.add_argument(
        "--no-verify",
        dest="verify",
        action="store_false",
        help="skip re-verification of construction claims",
    )
    parser.add_argument("--no-color", dest="color", action="store_false", help="plain output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verifier of each named object")
    p.add_argument("names", nargs="*")
    p = sub.add_parser("analyze", help="centers, commutators and perfectness")
    p.add_argument("name")
    p = sub.add_parser("tensor", help="non-abelian tensor product of two algebras")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--act-mn", default=None, help="action name, 'adjoint' or 'zero'")
    p.add_argument("--act-nm", default=None, help="action name, 'adjoint' or 'zero'")
    p = sub.add_parser("uce", help="universal central extensions")
    p.add_argument("name")
    p = sub.add_parser("classify", help="classify a morphism as an extension")
    p.add_argument("morphism")
    p = sub.add_parser("demo", help="worked examples")
    p.add_argument("demo_id", choices=DEMOS)
    return parser


def _inputs(paths):
    out = []
    for p in paths:
        if "/" not in p and not p.endswith(".json"):
            out.append(corpus_path(p))
        else:
            out.append(p)
    return out


def cmd_verify(ws, names, report):
    "Verdict of every named object, or of everything loaded."
    keys = list(ws.verdicts) if not names else []
    for name in names:
        section, _ = ws.lookup(name)
        keys.append((section, name))
    for section, name in keys:
        verdict = ws.verdicts.get((section, name))
        if verdict is None:
            raise ResolutionError(f"{name!r} has no verifier")
        report.add(f"{section[:-1]} {name}", verdict)
        report.check(verdict, "axiom", f"{name}: {verdict.axiom} at {verdict.witness}")
    return report


def _center_data(x):
    ZN = center(x.N)
    st = stabilizer(x)
    zc = xmod_center(x)
    return {
        "dims": list(x.dims),
        "fixed_points": fixed_points(x).dim,
        "stabilizer": st.dim,
        "center_N": ZN.dim,
        "stabilizer_cap_center": (st & ZN).dim,
        "xmod_center": zc.flags(),
    }


def cmd_analyze(ws, name, report):
    section, obj = ws.lookup(name)
    if section not in ("braidings", "xmods"):
        raise ResolutionError(f"{name!r} is not a crossed module")
    x = obj.xmod if isinstance(obj, BraidedXMod) else obj
    report.add("center", _center_data(x))
    comm = xmod_commutator(x)
    report.add(
        "commutator",
        {"action_closure": comm.sub_m.dim, "derived_N": comm.sub_n.dim, "perfect": is_perfect_xmod(x)},
    )
    if section == "braidings":
        bc = braided_center(obj)
        bcomm = braided_commutator(obj)
        ZB = bc.sub_n
        report.add(
            "braided_center",
            {
                "fixed_points": bc.sub_m.dim,
                "braided_center": ZB.dim,
                "boundary_preimage": ZB.preimage_under(obj.boundary.matrix).dim,
                "checks": bc.checks,
            },
        )
        report.add(
            "braided_commutator",
            {
                "braided_closure": bcomm.sub_m.dim,
                "derived_N": bcomm.sub_n.dim,
                "perfect": is_perfect_braided(obj),
                "checks": bcomm.checks,
            },
        )
        lemmas = check_perfect_base_equalities(obj)
        report.add("perfect_base_equalities", lemmas)
        for key, ok in list(bc.checks.items()) + list(bcomm.checks.items()):
            report.check(ok, "internal", f"{name}: {key}")
        if not lemmas.skipped:
            report.check(lemmas.ok(), "internal", f"{name}: perfect base equalities")
    return report


def _named_action(ws, spec, actor, module):
    if spec in (None, "zero"):
        return Action.zero(actor, module)
    if spec == "adjoint":
        if actor is not module:
            raise ResolutionError(
                f"the adjoint action needs equal factors, got {actor.name} and {module.name}"
            )
        return adjoint_action(actor)
    act = ws.get("actions", spec)
    if act.actor is not actor or act.module is not module:
        raise ResolutionError(f"action {spec!r} is not an action of {actor.name} on {module.name}")
    return act


def cmd_tensor(ws, left, right, report, act_mn=None, act_nm=None):
    M = ws.get("algebras", left)
    N = ws.get("algebras", right)
    default = "adjoint" if M is N else "zero"
    a_mn = _named_action(ws, act_mn or default, M, N)
    a_nm = _named_action(ws, act_nm or default, N, M)
    tp = build_nonabelian_tensor(M, N, a_mn, a_nm)
    oracle = tensor_dim_oracle(M, N, a_mn, a_nm)
    report.add(
        "tensor",
        {
            "ambient_dim": tp.ambient_dim,
            "relations_dim": tp.W.dim,
            "dim": tp.dim,
            "oracle_dim": oracle,
            "abelian": tp.quotient.is_abelian(),
            "perfect": derived_subalgebra(tp.quotient).is_full(),
        },
    )
    report.check(oracle == tp.dim, "internal", "dimension disagrees with the relation rank")
    return report


def cmd_uce(ws, name, report, verify=True):
    bx = ws.braided(name)
    result = universal_central_extension(bx, verify=verify)
    data = result.to_dict()
    if result.exists:
        data["kernel_invariants"] = list(h2_like_invariants(result))
    else:
        w = non_perfect_witness(BraidedMorphism.identity(bx))
        data["non_perfect_witness"] = {"difference": list(w.difference), "checks": w.checks}
    report.add("uce", data)
    if is_perfect_xmod(bx.xmod):
        report.add("compatible_uce", compatible_uce(bx, verify=verify))
    return report


def cmd_classify(ws, name, report):
    phi = ws.get("morphisms", name)
    if isinstance(phi, BraidedMorphism):
        cls = classify_braided_extension(phi)
    else:
        cls = classify_xmod_extension(phi)
    report.add("classification", cls)
    expected = ws.expectations.get(name, {})
    got = cls.to_dict()
    for key, want in expected.items():
        report.check(got.get(key) == want, "classification", f"{name}: {key} expected {want}")
    return report


def demo_k2k3(report, verify=True):
    ws = load([corpus_path("k2k3")])
    phi = ws.get("morphisms", "pi_pair")
    cls = classify_braided_extension(phi)
    subs = cls.subspaces
    src = phi.source
    data = {
        "extension": cls.extension,
        "compatible_central": cls.compatible_central,
        "central": cls.central,
        "braided_center": subs["braided_center"].dim,
        "center_N": center(src.N).dim,
        "stabilizer": stabilizer(src.xmod).dim,
        "fixed_points": subs["fixed_points"].dim,
        "ker_pi": subs["ker_f2"].dim,
        "ker_pi_tensor_pi": subs["ker_f1"].dim,
    }
    report.add("k2k3", data)
    expected = {
        "extension": True,
        "compatible_central": True,
        "central": False,
        "braided_center": 0,
        "center_N": 3,
        "stabilizer": 3,
        "fixed_points": 9,
        "ker_pi": 1,
        "ker_pi_tensor_pi": 5,
    }
    for key, want in expected.items():
        report.check(data[key] == want, "classification", f"{key}: {data[key]} != {want}")
    return report


def demo_uce_theorem(report, verify=True):
    ws = load([corpus_path("sl2"), corpus_path("h3")])
    sl2 = ws.get("algebras", "sl2")
    adj = adjoint_action(sl2)
    oracle = tensor_dim_oracle(sl2, sl2, adj, adj)
    perfect = ws.braided("sl2_id")
    u = universal_central_extension(perfect, verify=verify)
    report.add(
        "perfect",
        {
            "oracle_dim": oracle,
            "uce": u.to_dict(),
        },
    )
    report.check(oracle == 3, "internal", "sl2 (x) sl2 relation rank")
    report.check(u.exists and u.classification.central, "internal", "sl2 UCE is central")
    report.check(u.exists and h2_like_invariants(u) == (0, 0), "internal", "sl2 kernels vanish")

    h3 = ws.braided("h3_id")
    nu = universal_central_extension(h3, verify=verify)
    w = non_perfect_witness(BraidedMorphism.identity(h3))
    distinct = uniqueness_probe(w.extension, w.h, w.g)
    report.add(
        "not_perfect",
        {
            "uce": nu.to_dict(),
            "witness_checks": w.checks,
            "difference": list(w.difference),
            "uniqueness_probe": distinct,
        },
    )
    report.check(not nu.exists, "internal", "h3 is reported not perfect")
    report.check(w.verdict(), "internal", "non-perfect witness")
    report.check(not distinct, "internal", "distinct mediators over a non-perfect source")
    return report


def demo_sl2_corollary(report, verify=True):
    ws = load([corpus_path("sl2")])
    sl2 = ws.get("algebras", "sl2")
    bx = tensor_square_xmod(sl2, verify=verify)
    triple, square = corollary_dims(sl2, verify=verify)
    comp = compare_uce(bx, verify=verify)
    report.add(
        "sl2_corollary",
        {
            "dim_M_tensor_MM": triple,
            "dim_MM": square,
            "dims_match": triple == square,
            "inverse_pair": comp.checks,
        },
    )
    report.check(triple == square == 3, "internal", "M (x) (M (x) M) and M (x) M dimensions")
    report.check(comp.ok(), "internal", "inverse pair equations")
    return report


def cmd_demo(demo_id, report, verify=True):
    if demo_id == "k2k3":
        return demo_k2k3(report, verify)
    if demo_id == "uce-theorem":
        return demo_uce_theorem(report, verify)
    if demo_id == "sl2-corollary":
        return demo_sl2_corollary(report, verify)
    raise ResolutionError(f"Unknown demo {demo_id!r}.")


def _configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def run_command(args):
    "Dispatch parsed arguments; returns the report."
    positional = []
    for key in ("names", "name", "left", "right", "morphism", "demo_id"):
        v = getattr(args, key, None)
        if v is not None:
            positional.extend(v if isinstance(v, list) else [v])
    report = Report(args.command, positional)
    if args.command == "demo":
        return cmd_demo(args.demo_id, report, args.verify)
    ws = load(_inputs(args.input), check=args.strict or args.command != "verify")
    logger.info("loaded %d files", len(ws.sources))
    if args.command == "verify":
        return cmd_verify(ws, args.names, report)
    if args.command == "analyze":
        return cmd_analyze(ws, args.name, report)
    if args.command == "tensor":
        return cmd_tensor(ws, args.left, args.right, report, args.act_mn, args.act_nm)
    if args.command == "uce":
        return cmd_uce(ws, args.name, report, args.verify)
    if args.command == "classify":
        return cmd_classify(ws, args.morphism, report)
    raise ResolutionError(f"Unknown command {args.command!r}.")


def main(argv=None):
    """
    Run the driver and return the exit code.

    Exit codes: 0 success, 2 parse or resolution failure, 3 axiom violation,
    4 classification mismatch, 5 failed internal assertion.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    if args.color and args.format == "human":
        colorama.init()
    report = Report(args.command)
    try:
        report = run_command(args)
    except (ParseError, ResolutionError) as err:
        report.fail("parse", str(err))
    except (AxiomError, TensorProductError) as err:
        report.fail("axiom", str(err))
    except (ConstructionError, CrossedModuleError, BraidingError, LieAlgebraError, DimensionError) as err:
        logger.warning("%s: %s", type(err).__name__, err)
        report.fail("internal", str(err))
    if args.format == "machine":
        sys.stdout.write(report.to_machine())
    else:
        sys.stdout.write(report.to_human(color=args.color))
    return report.exit_code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

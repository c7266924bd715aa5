"""
Django management command exposing the mvlab checks.

    python manage.py mvlab tensor "chain(2)" "chain(3)"
    python manage.py mvlab witness-nonequivalence --seed 7

Every subcommand writes one JSON report to stdout. The exit code is 0 when the
verdict holds, 1 when a check fails and 2 for malformed input.
"""

import argparse
import logging
from fractions import Fraction

from django.core.management.base import BaseCommand, CommandError

from mvlab.adjunction import (
    check_family,
    check_naturality,
    default_family,
    functor_L_mor,
    functor_L_obj,
    load_family,
    non_equivalence_witness,
    unit_map,
)
from mvlab.conf import get_budget
from mvlab.dsl import Module, Pmv, elaborate_algebra, elaborate_module, elaborate_pmv, parse_expr, parse_module
from mvlab.exceptions import DslSyntaxError, ElaborationError, MvlabError
from mvlab.mv_core import check_axioms, semisimplicity_report
from mvlab.mvmod import (
    check_module_axioms,
    check_no_zero_divisors,
    check_p_ideals,
    make_module_hom,
    module_hom_all,
    unit_embedding_report,
)
from mvlab.pmv import check_pmv_axioms, is_mv_domain, is_pmv_plus
from mvlab.reports import LawReport, emit_json
from mvlab.tensor import check_bimorphism, tensor_ss

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2


def _rationals(text):
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _indices(text):
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")


class Command(BaseCommand):
    help = "Check MV-algebra, PMV-algebra and MV-module constructions and print a JSON report"
    requires_system_checks = []

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--seed", type=int, help="Seed for sampled laws (default MVLAB_SEED, else 0)")
        common.add_argument("--order", type=int, help="Enumeration order for infinite carriers (default 4)")
        common.add_argument("--samples", type=int, help="Tuples drawn per sampled law (default 1000)")
        common.add_argument("--exhaustive-limit", type=int, help="Largest carrier checked exhaustively (default 200)")
        common.add_argument("--json", dest="json", action="store_true", default=True, help="Print JSON (default)")
        common.add_argument("--no-json", dest="json", action="store_false", help="Print a readable summary")

        subparsers = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
        subparsers.required = True

        def add(name, help_text):
            return subparsers.add_parser(name, parents=[common], help=help_text)

        add("check-axioms", "MV-algebra axioms (plus product axioms for pmv(...))").add_argument("expr")
        add("radical", "Ideals and radical of the algebra").add_argument("expr")
        add("is-domain", "Whether a PMV-algebra is an MV-domain").add_argument("expr")
        add("is-pmv-plus", "Whether a PMV-algebra has no nonzero nilpotents").add_argument("expr")

        tensor = add("tensor", "Semisimple tensor product and its bimorphism")
        tensor.add_argument("left")
        tensor.add_argument("right")

        add("module-check", "MV-module axioms, P-ideals and zero divisors").add_argument("expr")
        add("embed-unit", "The embedding a -> a·1 of the scalars into a module").add_argument("expr")
        add("lift", "The lattice-ordered linear space generated by a module").add_argument("expr")

        lift_hom = add("lift-hom", "Lift module homomorphisms to linear maps")
        lift_hom.add_argument("source")
        lift_hom.add_argument("target")
        lift_hom.add_argument("--scalars", type=_rationals, help="Comma-separated scalar per target component")
        lift_hom.add_argument("--routing", type=_indices, help="Comma-separated source component per target component")

        adjoint = add("adjoint-check", "Universal arrows, functoriality and naturality over a family of modules")
        adjoint.add_argument("--family", default="default", help="'default' or a file with one module per line")

        witness = add("witness-nonequivalence", "Show that the unit of the adjunction is not an isomorphism")
        witness.add_argument("module", nargs="?", help="Module expression (default: the 3-element chain)")

    def handle(self, *args, **options):
        subcommand = options["subcommand"]
        handler = getattr(self, "_" + subcommand.replace("-", "_"))
        try:
            budget = get_budget(
                seed=options.get("seed"),
                order=options.get("order"),
                samples=options.get("samples"),
                exhaustive_limit=options.get("exhaustive_limit"),
            )
            report, payload = handler(options, budget)
        except (DslSyntaxError, ElaborationError) as e:
            self._error(options, e)
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except (MvlabError, OSError) as e:
            logger.warning(f"{subcommand} refused its input: {e}")
            self._error(options, e)
            raise CommandError(str(e), returncode=EXIT_USAGE)

        if options["json"]:
            self.stdout.write(emit_json(payload))
        else:
            self._summary(report, payload)

        if not report.passed:
            logger.info(f"{subcommand} failed on {report.instance}", extra={"instance": report.instance})
            raise CommandError(f"{subcommand}: verdict {report.verdict}", returncode=EXIT_FAILED)

    def _error(self, options, error):
        if options["json"]:
            self.stdout.write(emit_json({"verdict": "error", "error": type(error).__name__, "message": str(error)}))

    def _summary(self, report, payload):
        style = self.style.SUCCESS if report.passed else self.style.ERROR
        self.stdout.write(style(f"{payload['verdict']}: {payload['instance']}"))
        for key in ("result", "space", "property"):
            if key in payload:
                self.stdout.write(f"  {key}: {emit_json(payload[key])}")
        for check in payload.get("checks", []):
            mark = "✅" if check["verdict"] == "pass" else "❌"
            self.stdout.write(f"  {mark} {check['law']} ({check['cases']} cases)")
        for step in payload.get("trace", []):
            self.stdout.write(f"  {step['step']}: {emit_json(step)}")
        for certificate in payload.get("certificates", []):
            self.stdout.write(f"  certificate: {certificate}")

    def _check_axioms(self, options, budget):
        expr = parse_expr(options["expr"])
        if isinstance(expr, Module):
            report = check_module_axioms(elaborate_module(expr), budget)
        elif isinstance(expr, Pmv):
            pmv = elaborate_pmv(expr)
            report = check_axioms(pmv.base, budget)
            report.extend(check_pmv_axioms(pmv, budget), prefix="product")
            report.instance = pmv.describe()
        else:
            report = check_axioms(elaborate_algebra(expr), budget)
        return report, report.to_dict()

    def _radical(self, options, budget):
        report = semisimplicity_report(elaborate_algebra(parse_expr(options["expr"])), budget)
        return report, report.to_dict()

    def _is_domain(self, options, budget):
        report = is_mv_domain(elaborate_pmv(parse_expr(options["expr"])), budget)
        return report, report.to_dict()

    def _is_pmv_plus(self, options, budget):
        report = is_pmv_plus(elaborate_pmv(parse_expr(options["expr"])), budget)
        return report, report.to_dict()

    def _tensor(self, options, budget):
        left = elaborate_algebra(parse_expr(options["left"]))
        right = elaborate_algebra(parse_expr(options["right"]))
        tensor = tensor_ss(left, right)
        report = check_bimorphism(tensor, budget)
        report.certificates.append(f"ι_B = {tensor.iota('right').describe()}")
        payload = report.to_dict()
        payload["result"] = tensor.result.describe()
        return report, payload

    def _module_check(self, options, budget):
        module = parse_module(options["expr"])
        report = check_module_axioms(module, budget)
        if module.carrier.is_finite:
            report.extend(check_p_ideals(module, budget), prefix="P-ideal")
        zero_divisors = check_no_zero_divisors(module, budget)
        payload = report.to_dict()
        payload["no_zero_divisors"] = zero_divisors.to_dict()
        return report, payload

    def _embed_unit(self, options, budget):
        report = unit_embedding_report(parse_module(options["expr"]), budget)
        return report, report.to_dict()

    def _lift(self, options, budget):
        module = parse_module(options["expr"])
        space = functor_L_obj(module)
        iota = unit_map(module)
        report = iota.validation_report(budget)
        report.instance = module.describe()
        report.certificates.append(f"ι_M = {iota.describe()}")
        payload = report.to_dict()
        payload["space"] = space.to_dict()
        payload["result"] = space.describe()
        return report, payload

    def _lift_hom(self, options, budget):
        source = parse_module(options["source"])
        target = parse_module(options["target"])
        if options.get("scalars"):
            homs = [make_module_hom(source, target, options["scalars"], options.get("routing"), budget)]
        else:
            homs = module_hom_all(source, target)
        report = LawReport(instance=f"{source.describe()} -> {target.describe()}", seed=budget.seed)
        lifts = []
        for h in homs:
            sharp = functor_L_mor(h, budget)
            report.extend(check_naturality(h, budget), prefix=h.describe())
            lifts.append({"hom": h.to_dict(), "lift": sharp.to_dict()})
        if not homs:
            report.notes.append("no module homomorphisms between the given modules")
        payload = report.to_dict()
        payload["lifts"] = lifts
        return report, payload

    def _adjoint_check(self, options, budget):
        name = options.get("family") or "default"
        family = default_family() if name == "default" else load_family(name)
        report = check_family(family, budget)
        return report, report.to_dict()

    def _witness_nonequivalence(self, options, budget):
        module = parse_module(options["module"]) if options.get("module") else None
        report = non_equivalence_witness(module, budget)
        return report, report.to_dict()

from django.conf import settings
from django.core.management.base import BaseCommand

from inputselect.structural.controllability import minimum_inputs_lower_bound
from inputselect.structural.exceptions import StructuralError
from inputselect.structural.management.commands._instance import command_error, load_instance, to_json
from inputselect.structural.oracle import brute_force_minccis
from inputselect.structural.selection import solve_minccis_approx
from inputselect.structural.utils.reports import approximation_ratio, oracle_report


class Command(BaseCommand):
    help = "Finds the exact cheapest input selection by exhaustive search (small instances only)"

    def add_arguments(self, parser):
        parser.add_argument("path", type=str, help="Instance file (text or JSON)")
        parser.add_argument("--compare", action="store_true", help="Also run the approximation and print the ratio")
        parser.add_argument("--uniform", action="store_true", help="Count inputs instead of summing costs")
        parser.add_argument(
            "--limit",
            type=int,
            default=None,
            help="Largest number of inputs to enumerate (default INPUTSELECT_ORACLE_SUBSET_LIMIT)",
        )
        parser.add_argument("--json", action="store_true", help="Print the report as JSON")

    def handle(self, *args, **options):
        sys = load_instance(options["path"]).to_system()
        if options["uniform"]:
            sys = sys.with_costs([1] * sys.m)
        limit = options["limit"] if options["limit"] is not None else settings.INPUTSELECT_ORACLE_SUBSET_LIMIT

        try:
            result = brute_force_minccis(sys, limit=limit)
            approx_cost = solve_minccis_approx(sys).total_cost if options["compare"] else None
        except StructuralError as exc:
            raise command_error(exc) from exc

        if options["json"]:
            self.stdout.write(to_json(oracle_report(result, approx_cost)))
            return

        sets = " ".join("{" + ",".join(f"u{j}" for j in s.one_based()) + "}" for s in result.optimal_sets)
        self.stdout.write(self.style.SUCCESS(f"optimum: {result.optimum_cost}"))
        self.stdout.write(f"optimal sets: {sets}")
        self.stdout.write(f"subsets examined: {result.subsets_examined}")
        self.stdout.write(f"at least {minimum_inputs_lower_bound(sys)} needed by any selection")
        if approx_cost is not None:
            ratio = approximation_ratio(approx_cost, result.optimum_cost)
            self.stdout.write(f"approximation: {approx_cost}, ratio {ratio} ({float(ratio):g})")

from django.core.management.base import BaseCommand, CommandError

from inputselect.structural.controllability import minimum_inputs_lower_bound
from inputselect.structural.core import StructuredSystem, as_cost
from inputselect.structural.exceptions import StructuralError
from inputselect.structural.management.commands._instance import EXIT_USAGE, command_error, load_instance, to_json
from inputselect.structural.models import Instance, SelectionRun
from inputselect.structural.selection import (
    SelectionResult,
    solve_min_cost_output_selection,
    solve_minccis_approx,
    solve_mincis_approx,
)
from inputselect.structural.utils.choices import OBJECTIVE_CARDINALITY, OBJECTIVE_COST, OBJECTIVE_OBSERVABILITY
from inputselect.structural.utils.reports import select_report


class Command(BaseCommand):
    help = "Selects a cheap set of inputs (or outputs) keeping the system structurally controllable (observable)"

    def add_arguments(self, parser):
        parser.add_argument("path", type=str, help="Instance file (text or JSON)")
        costs = parser.add_mutually_exclusive_group()
        costs.add_argument("--uniform", action="store_true", help="Minimise the number of inputs instead of cost")
        costs.add_argument("--costs", type=str, help='Override the file costs, e.g. "1 1 21/2"')
        parser.add_argument(
            "--dual-observability",
            action="store_true",
            help="Read the B block as the transposed output matrix and select outputs",
        )
        parser.add_argument("--json", action="store_true", help="Print the report as JSON")
        parser.add_argument(
            "--save", type=str, metavar="NAME", help="Record the instance and result in the run ledger"
        )

    def handle(self, *args, **options):
        instance = load_instance(options["path"])
        observability = options["dual_observability"] or instance.outputs
        a_bar, c_bar, p_y = instance.observation_pair()
        # The controllability instance that is actually solved; for outputs the dual (Āᵀ, C̄ᵀ).
        sys = StructuredSystem(a_bar.transpose(), c_bar.transpose(), p_y) if observability else instance.to_system()
        if options["costs"] is not None:
            sys = sys.with_costs(self._parse_costs(options["costs"], sys.m))

        try:
            if observability:
                objective = OBJECTIVE_OBSERVABILITY
                if options["uniform"]:
                    sys = sys.with_costs([1] * sys.m)
                result = solve_min_cost_output_selection(a_bar, c_bar, sys.input_costs)
            elif options["uniform"]:
                objective = OBJECTIVE_CARDINALITY
                result = solve_mincis_approx(sys)
            else:
                objective = OBJECTIVE_COST
                result = solve_minccis_approx(sys)
        except StructuralError as exc:
            raise command_error(exc) from exc

        prefix = "y" if observability else "u"
        lower_bound = minimum_inputs_lower_bound(sys)
        if options["json"]:
            self.stdout.write(to_json(select_report(result, objective, lower_bound, prefix)))
        else:
            self._write_text(result, lower_bound, prefix)

        if options["save"]:
            self._save(options["save"], sys, instance.discrete, result, objective)

    def _parse_costs(self, text: str, m: int) -> list:
        tokens = text.split()
        if len(tokens) != m:
            raise CommandError(f"expected {m} costs, got {len(tokens)}", returncode=EXIT_USAGE)
        try:
            return [as_cost(token) for token in tokens]
        except (ValueError, ZeroDivisionError) as exc:
            raise CommandError(f"bad cost in {text!r}", returncode=EXIT_USAGE) from exc

    def _write_text(self, result: SelectionResult, lower_bound: int, prefix: str):
        chosen = " ".join(f"{prefix}{j}" for j in result.inputs.one_based())
        self.stdout.write(self.style.SUCCESS(f"selected: {chosen}"))
        self.stdout.write(f"total cost: {result.total_cost}")
        self.stdout.write(f"delta: {result.delta} (effective {result.effective_delta}), bound: {result.bound}")
        self.stdout.write(f"LP objective: {result.lp_objective}")
        self.stdout.write(
            f"certificate: flow value {result.certificate.value} over {len(result.certificate.support())} edges"
        )
        self.stdout.write(f"at least {lower_bound} needed by any selection")

    def _save(self, name: str, sys: StructuredSystem, discrete: bool, result: SelectionResult, objective: str):
        try:
            saved = Instance.objects.from_system(name, sys, discrete)
        except ValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc
        run = SelectionRun.objects.record(saved, result, objective)
        self.stdout.write(self.style.SUCCESS(f"Saved run {run.pk} for {saved.slug}"))

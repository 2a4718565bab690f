from django.core.management.base import BaseCommand

from inputselect.structural.models import SelectionRun


class Command(BaseCommand):
    help = "Lists the selections recorded in the run ledger"

    def add_arguments(self, parser):
        parser.add_argument("--instance", type=str, default=None, help="Only runs of the instance with this slug")

    def handle(self, *args, **options):
        runs = SelectionRun.objects.select_related("instance")
        if options["instance"]:
            runs = runs.filter(instance__slug=options["instance"])

        if not runs.exists():
            self.stdout.write(self.style.WARNING("No runs recorded"))
            return
        for run in runs:
            chosen = " ".join(run.labels)
            self.stdout.write(
                f"{run.created:%Y-%m-%d %H:%M} {run.instance.slug} [{run.objective}] {chosen} "
                f"cost={run.total_cost} lp={run.lp_objective} delta={run.delta} bound={run.bound}"
            )

from django.core.management.base import BaseCommand, CommandError

from inputselect.structural.controllability import diagnose, verify_deciders
from inputselect.structural.core import validate_system
from inputselect.structural.exceptions import DeciderDisagreement, StructuralError
from inputselect.structural.graph import state_sccs
from inputselect.structural.management.commands._instance import (
    EXIT_INFEASIBLE,
    EXIT_INTERNAL,
    command_error,
    load_instance,
    to_json,
)
from inputselect.structural.utils.instances import dumps
from inputselect.structural.utils.reports import check_report


def _state_set(members) -> str:
    return "{" + ",".join(f"x{v + 1}" for v in members) + "}"


class Command(BaseCommand):
    help = "Decides structural controllability of an instance with both deciders"

    def add_arguments(self, parser):
        parser.add_argument("path", type=str, help="Instance file (text or JSON)")
        parser.add_argument("--strict", action="store_true", help="Exit with status 1 when not controllable")
        parser.add_argument("--json", action="store_true", help="Print the report as JSON")

    def handle(self, *args, **options):
        instance = load_instance(options["path"])
        sys = instance.to_system()
        try:
            validate_system(sys)
            scc = state_sccs(sys)
            lin, flow = verify_deciders(sys, scc)
            diagnosis = diagnose(sys, scc)
        except DeciderDisagreement as exc:
            self.stderr.write(dumps(instance))
            raise CommandError(f"deciders disagree: {exc}", returncode=EXIT_INTERNAL) from exc
        except StructuralError as exc:
            raise command_error(exc) from exc

        if options["json"]:
            report = check_report(sys.n, sys.m, scc, lin, flow, diagnosis, instance.discrete)
            self.stdout.write(to_json(report))
        else:
            self._write_text(scc, lin, flow, diagnosis)

        if options["strict"] and not lin.controllable:
            raise CommandError("the system is not structurally controllable", returncode=EXIT_INFEASIBLE)

    def _write_text(self, scc, lin, flow, diagnosis):
        summary = f"q={scc.q}, maxflow={flow.max_flow_value}"
        if lin.controllable:
            self.stdout.write(self.style.SUCCESS(f"controllable, {summary}"))
        else:
            self.stdout.write(self.style.WARNING(f"not controllable, {summary}"))
        linked = " ".join(f"N{i + 1}={_state_set(scc.members(c))}" for i, c in enumerate(scc.non_top_linked))
        self.stdout.write(f"non-top-linked SCCs: {linked}")
        self.stdout.write(
            f"accessible: {'yes' if lin.accessible else 'no'}, dilation-free: {'yes' if lin.dilation_free else 'no'}"
        )
        for members in diagnosis.inaccessible_sccs:
            self.stdout.write(self.style.WARNING(f"inaccessible SCC {_state_set(members)}: no input reaches it"))
        if diagnosis.unmatched_states:
            bare = ",".join(f"x'{k + 1}" for k in diagnosis.unmatched_states)
            self.stdout.write(
                self.style.WARNING(f"dilation: {bare} left unmatched (matching covers {diagnosis.matching_size})")
            )

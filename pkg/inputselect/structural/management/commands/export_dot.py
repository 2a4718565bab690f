from django.core.management.base import BaseCommand, CommandError

from inputselect.structural.exceptions import StructuralError
from inputselect.structural.flow import build_cost_network
from inputselect.structural.management.commands._instance import EXIT_USAGE, command_error, load_instance
from inputselect.structural.selection import solve_minccis_approx
from inputselect.structural.utils.choices import (
    EXPORT_BIPARTITE,
    EXPORT_CONDENSATION,
    EXPORT_DIGRAPH,
    EXPORT_FLOWNET,
    EXPORT_KINDS,
)
from inputselect.structural.utils.dot import bipartite_to_dot, condensation_to_dot, digraph_to_dot, flownet_to_dot


class Command(BaseCommand):
    help = "Prints one of the graphs of an instance in Graphviz DOT"

    def add_arguments(self, parser):
        parser.add_argument("path", type=str, help="Instance file (text or JSON)")
        parser.add_argument("--what", choices=EXPORT_KINDS, default=EXPORT_FLOWNET)
        parser.add_argument(
            "--with-flow",
            action="store_true",
            help="Label the flow network with the certificate flow of the approximation",
        )
        parser.add_argument("--weighted", action="store_true", help="Label bipartite edges with their weights")
        parser.add_argument("--states-only", action="store_true", help="Draw D(Ā) without the input vertices")

    def handle(self, *args, **options):
        sys = load_instance(options["path"]).to_system()
        what = options["what"]
        if options["with_flow"] and what != EXPORT_FLOWNET:
            raise CommandError("--with-flow only applies to --what flownet", returncode=EXIT_USAGE)

        try:
            if what == EXPORT_DIGRAPH:
                text = digraph_to_dot(sys, with_inputs=not options["states_only"])
            elif what == EXPORT_CONDENSATION:
                text = condensation_to_dot(sys)
            elif what == EXPORT_BIPARTITE:
                text = bipartite_to_dot(sys, weighted=options["weighted"])
            elif options["with_flow"]:
                certificate = solve_minccis_approx(sys).certificate
                text = flownet_to_dot(certificate.network, certificate)
            else:
                text = flownet_to_dot(build_cost_network(sys))
        except StructuralError as exc:
            raise command_error(exc) from exc
        self.stdout.write(text, ending="")

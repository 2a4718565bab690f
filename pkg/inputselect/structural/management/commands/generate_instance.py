from django.core.management.base import BaseCommand, CommandError

from inputselect.structural.exceptions import BadSpec
from inputselect.structural.management.commands._instance import EXIT_USAGE
from inputselect.structural.utils.choices import GENERATOR_FAMILIES
from inputselect.structural.utils.generators import GeneratorSpec, generate
from inputselect.structural.utils.instances import InstanceFile, dumps, write_instance


class Command(BaseCommand):
    help = "Generates a seeded random instance file"

    def add_arguments(self, parser):
        parser.add_argument("family", type=str, help=f"One of: {', '.join(GENERATOR_FAMILIES)}")
        parser.add_argument("n", type=int, help="Number of states")
        parser.add_argument("m", type=int, help="Number of candidate inputs")
        parser.add_argument("--density", type=float, default=0.3, help="Probability of each extra Ā entry")
        parser.add_argument("--input-density", type=float, default=0.3, help="Probability of each extra B̄ entry")
        parser.add_argument("--cost-low", type=int, default=1)
        parser.add_argument("--cost-high", type=int, default=10)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--blocks", type=int, default=2, help="Number of cycles in the block family")
        parser.add_argument("--discrete", action="store_true", help="Mark the instance as discrete time")
        parser.add_argument(
            "-o",
            "--output",
            type=str,
            default=None,
            help='Target file (".json" writes JSON, "-" prints); defaults to <slug>.txt',
        )

    def handle(self, *args, **options):
        spec = GeneratorSpec(
            family=options["family"],
            n=options["n"],
            m=options["m"],
            density=options["density"],
            input_density=options["input_density"],
            cost_low=options["cost_low"],
            cost_high=options["cost_high"],
            seed=options["seed"],
            blocks=options["blocks"],
        )
        try:
            system = generate(spec)
        except BadSpec as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

        instance = InstanceFile.from_system(system, options["discrete"])
        target = options["output"] or f"{spec.slug()}.txt"
        if target == "-":
            self.stdout.write(dumps(instance), ending="")
            return
        try:
            write_instance(instance, target)
        except OSError as exc:
            raise CommandError(f"cannot write {target}: {exc.strerror}", returncode=EXIT_USAGE) from exc
        self.stdout.write(self.style.SUCCESS(f"Wrote {spec.family} instance (n={spec.n}, m={spec.m}) to {target}"))

from __future__ import annotations

from typing import TYPE_CHECKING

from django.db.models import Manager
from slugify import slugify

from inputselect.structural.core import StructuredSystem
from inputselect.structural.selection import SelectionResult
from inputselect.structural.utils.instances import InstanceFile, dumps

if TYPE_CHECKING:
    from inputselect.structural.models import Instance, SelectionRun  # noqa: F401


class InstanceManager(Manager["Instance"]):
    """Custom manager for the Instance model."""

    def from_system(self, name: str, system: StructuredSystem, discrete: bool = False) -> Instance:
        """
        Store ``system`` under ``name``. An instance with the same slug is
        reused and its pattern replaced by the new one.
        """
        if not name.strip():
            raise ValueError("The instance name must be set")
        instance, _ = self.update_or_create(
            slug=slugify(name),
            defaults={
                "name": name,
                "n": system.n,
                "m": system.m,
                "text": dumps(InstanceFile.from_system(system, discrete)),
            },
        )
        return instance


class SelectionRunManager(Manager["SelectionRun"]):
    """Custom manager for the SelectionRun model."""

    def record(self, instance: Instance, result: SelectionResult, objective: str) -> SelectionRun:
        return self.create(
            instance=instance,
            objective=objective,
            inputs=result.inputs.one_based(),
            total_cost=str(result.total_cost),
            lp_objective=str(result.lp_objective),
            delta=result.delta,
            bound=result.bound,
        )

from fractions import Fraction
from typing import ClassVar

from django.db.models import (
    CASCADE,
    CharField,
    DateTimeField,
    ForeignKey,
    JSONField,
    Model,
    PositiveIntegerField,
    SlugField,
    TextField,
)
from django.utils.translation import gettext_lazy as _
from slugify import slugify

from inputselect.structural.managers import InstanceManager, SelectionRunManager
from inputselect.structural.utils.choices import BOUNDS, OBJECTIVE_OBSERVABILITY, OBJECTIVES
from inputselect.structural.utils.instances import InstanceFile, loads


class Instance(Model):
    """
    A structured system saved to the run ledger, stored in the canonical
    instance text format.
    """

    # The name the instance was saved under.
    name = CharField(_("Name of instance"), max_length=255)
    # The unique slug of the instance, derived from the name.
    slug = SlugField(unique=True, editable=False, max_length=255)
    # Number of states.
    n = PositiveIntegerField()
    # Number of candidate inputs.
    m = PositiveIntegerField()
    # Canonical instance text (see utils.instances).
    text = TextField()
    # When the instance was first saved.
    created = DateTimeField(auto_now_add=True, editable=False)

    objects: ClassVar[InstanceManager] = InstanceManager()

    def save(self, *args, **kwargs):
        if not self.slug:
            self.slug = slugify(self.name)
        super().save(*args, **kwargs)

    def to_instance_file(self) -> InstanceFile:
        return loads(self.text)

    def __str__(self) -> str:
        return f"{self.name} (n={self.n}, m={self.m})"


class SelectionRun(Model):
    """
    One input (or output) selection computed for an instance.
    """

    # The instance the selection was computed for.
    instance = ForeignKey(Instance, on_delete=CASCADE, related_name="runs")
    # What was minimised.
    objective = CharField(max_length=32, choices=OBJECTIVES)
    # Selected inputs, 1-based.
    inputs = JSONField(default=list)
    # Exact rational cost of the selection, e.g. "21/2".
    total_cost = CharField(max_length=64)
    # Flow-weighted cost of the certificate flow.
    lp_objective = CharField(max_length=64)
    # Largest in-degree of a primed input vertex.
    delta = PositiveIntegerField()
    # Which approximation guarantee applies.
    bound = CharField(max_length=32, choices=BOUNDS)
    # When the run was recorded.
    created = DateTimeField(auto_now_add=True, editable=False)

    objects: ClassVar[SelectionRunManager] = SelectionRunManager()

    class Meta:
        ordering = ["-created", "-id"]

    @property
    def cost(self) -> Fraction:
        return Fraction(self.total_cost)

    @property
    def labels(self) -> list[str]:
        prefix = "y" if self.objective == OBJECTIVE_OBSERVABILITY else "u"
        return [f"{prefix}{j}" for j in self.inputs]

    def __str__(self) -> str:
        chosen = " ".join(self.labels)
        return f"{self.instance.name}: {chosen} @ {self.total_cost}"

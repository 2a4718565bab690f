from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class StructuralConfig(AppConfig):
    name = "inputselect.structural"
    verbose_name = _("Structural controllability")

from .base import *  # noqa
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = True
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="cWg0nIogFlE2GBRvCcmUCFv34IrhUMQafQzGrbmypfAykFODq4IOCpqp62jnlS06",
)

# Your stuff...
# ------------------------------------------------------------------------------
LOGGING["loggers"]["inputselect"]["level"] = env("INPUTSELECT_LOG_LEVEL", default="DEBUG")  # type: ignore # noqa: F405

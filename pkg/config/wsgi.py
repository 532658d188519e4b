# ruff: noqa
"""
WSGI config for the mfbvar project, serving the admin over the run records.

It exposes a module-level variable named ``application``. Django's
``runserver`` command discovers it via the ``WSGI_APPLICATION`` setting.
"""
import os
from pathlib import Path

import environ
from django.core.wsgi import get_wsgi_application

ROOT_DIR = Path(__file__).resolve(strict=True).parent.parent
env = environ.Env()

PRODUCTION_SETTINGS = "config.settings.production"

env_file_path = ROOT_DIR / ".env"
if env_file_path.is_file():
    env.read_env(str(env_file_path))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", env("DJANGO_SETTINGS_MODULE", default=PRODUCTION_SETTINGS))

application = get_wsgi_application()

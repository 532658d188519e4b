# ruff: noqa
from django.conf import settings
from django.contrib import admin
from django.urls import path

# The admin is the only web surface: it lists chain runs, their status,
# block timings and where their draws are stored.
urlpatterns = [
    path(settings.ADMIN_URL, admin.site.urls),
]

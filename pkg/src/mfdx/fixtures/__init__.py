"""Bundled demo projects."""

from importlib import resources
from pathlib import Path

from mfdx.project import Project
from mfdx.project_io import load_project


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture, e.g. ``leaf_blower``."""
    return Path(str(resources.files(__name__) / f"{name}.mfdx.json"))


def load_fixture(name: str) -> Project:
    return load_project(fixture_path(name).read_bytes())


def leaf_blower_path() -> Path:
    """Hand-held leaf blower demo: the full pipeline exercised end to end."""
    return fixture_path("leaf_blower")


def load_leaf_blower() -> Project:
    return load_fixture("leaf_blower")

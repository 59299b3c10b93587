import pytest

from torus_variety_forms.common import models

pytest.register_assert_rewrite("helpers")

import helpers  # noqa: E402


@pytest.fixture
def load_datum():
    def _load(name: str) -> models.DatumFile:
        return models.DatumFile.load_file(helpers.get_datum_path(name))

    return _load


@pytest.fixture
def run_config():
    def _build(**kwargs) -> models.ConfigRun:
        return models.ConfigRun.load_data(kwargs)

    return _build

import pytest
from click.testing import CliRunner

from app import create_app


@pytest.fixture()
def client():
    app = create_app()
    app.config.update(TESTING=True)
    return app.test_client()


@pytest.fixture()
def runner():
    return CliRunner()

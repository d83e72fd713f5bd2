import pytest
from hypothesis import HealthCheck, settings
from config.loader import get_core_config, get_hook_config
from tests.synthetic import LipFixture, make_lip_fixture

# the environment-isolation fixture below is autouse and function scoped
settings.register_profile('lipgroove', deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile('lipgroove')


@pytest.fixture(scope='session')
def lip() -> LipFixture:
    return make_lip_fixture()


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    monkeypatch.delenv('LIPGROOVE_DB', raising=False)
    monkeypatch.delenv('LIPGROOVE_SETTINGS', raising=False)
    get_core_config.cache_clear()
    get_hook_config.cache_clear()
    yield
    get_core_config.cache_clear()
    get_hook_config.cache_clear()

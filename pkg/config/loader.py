import os
import json
from functools import lru_cache
from pathlib import Path
from dotenv import load_dotenv
from pydantic import ValidationError
from utils.exceptions import ConfigError
from utils.models.settings_model import HookConfig, Settings
from utils.logging import logger

CONFIG_DIR = os.path.dirname(__file__)
HOOK_CONFIG_FILE = os.path.join(CONFIG_DIR, 'hooks.json')
STORE_ENV_VAR = 'LIPGROOVE_DB'
SETTINGS_ENV_VAR = 'LIPGROOVE_SETTINGS'

_logger = logger.bind(module='ConfigLoader')


def settings_file() -> Path:
    return Path(os.getenv(SETTINGS_ENV_VAR, os.path.join(CONFIG_DIR, 'settings.json')))


def _read_json(path: Path, what: str) -> dict:
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        _logger.error(f"❌ Error decoding {what} file: {e}")
        raise ConfigError(f"Error decoding {what} file ({path}): {str(e)}") from e
    except OSError as e:
        _logger.error(f"❌ Error reading {what} file: {e}")
        raise ConfigError(f"Error reading {what} file ({path}): {str(e)}") from e


@lru_cache()
def get_core_config() -> Settings:
    """Load settings from settings.json, falling back to model defaults."""
    load_dotenv()  # Load .env file if present
    path = settings_file()
    if path.exists():
        _logger.info(f"📖 Loading settings from: {path}")
        settings_dict = _read_json(path, 'settings')
    else:
        _logger.info(f"ℹ️ No settings file at {path}, using defaults")
        settings_dict = {}

    store_path = os.getenv(STORE_ENV_VAR)
    if store_path:
        settings_dict.setdefault('store', {})['path'] = store_path

    try:
        settings = Settings(**settings_dict)
    except ValidationError as e:
        _logger.error(f"❌ Invalid settings in {path}: {e}")
        raise ConfigError(f"Error loading settings from {path}: {str(e)}") from e
    _logger.success("✅ Successfully loaded settings")
    return settings


@lru_cache()
def get_hook_config() -> HookConfig:
    """Load extraction hook configuration from the hooks.json file."""
    _logger.info(f"📖 Loading hook config from: {HOOK_CONFIG_FILE}")
    if not os.path.exists(HOOK_CONFIG_FILE):
        _logger.error("❌ Hook config file not found")
        raise ConfigError(f"Hook config file not found at {HOOK_CONFIG_FILE}.")
    try:
        config = HookConfig(**_read_json(Path(HOOK_CONFIG_FILE), 'hook config'))
    except ValidationError as e:
        _logger.error(f"❌ Error loading hook config: {e}")
        raise ConfigError(f"Error loading hook config from {HOOK_CONFIG_FILE}: {str(e)}") from e
    _logger.success(f"✅ Successfully loaded {len(config.hooks)} hook configurations")
    return config

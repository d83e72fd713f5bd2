import importlib
from pathlib import Path
from typing import List
from utils.exceptions import ConfigError
from utils.models.settings_model import HookConfig, HookDefinition
from utils.logging import logger
from utils.models.data_models import GrooveResult
from .base import ExtractionHook


class HookManager:
    _logger = logger.bind(module='HookManager')

    @classmethod
    def load_hook(cls, hook_config: HookDefinition) -> ExtractionHook:
        """Load a single extraction hook."""
        cls._logger.info(f"📥 Loading extraction hook: {hook_config.class_name}")
        try:
            module = importlib.import_module(hook_config.module)
            hook_class = getattr(module, hook_config.class_name)
            hook = hook_class()
        except Exception as e:
            cls._logger.error(f"❌ Failed to load {hook_config.class_name}: {e}")
            raise ConfigError(f"Failed to load extraction hook {hook_config.class_name}: {e}") from e
        if not isinstance(hook, ExtractionHook):
            raise ConfigError(f"{hook_config.class_name} is not an ExtractionHook")
        cls._logger.success(f"✅ Successfully loaded {hook_config.class_name}")
        return hook

    @classmethod
    def load_hooks(cls, config: HookConfig) -> List[ExtractionHook]:
        """Load all extraction hooks from config."""
        cls._logger.info(f"📦 Loading {len(config.hooks)} extraction hooks")
        return [cls.load_hook(hook) for hook in config.hooks]

    @classmethod
    def run_hooks(cls, hooks: List[ExtractionHook], result: GrooveResult, out_dir: Path) -> None:
        """Hand a result to every hook in order. A failing hook stops the run."""
        for hook in hooks:
            try:
                hook.process_result(result, out_dir)
            except Exception as e:
                cls._logger.error(f"💥 Error in extraction hook {hook.__class__.__name__}: {e}")
                raise

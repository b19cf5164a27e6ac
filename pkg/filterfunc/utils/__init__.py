"""
filterfunc utilities and configuration management.

Provides configuration management, logging, and utility functions for the project.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv

from filterfunc.core.errors import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "FILTERFUNC_"
EVENT_SELECTORS = ("all", "nonempty", "singletons", "members")
ESTIMATORS = ("relative_frequency", "item_weighted")


class LogLevel(Enum):
    """Logging levels for the application."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


@dataclass
class StudyConfig:
    """Configuration of a sampling study."""
    model_path: Optional[str] = None
    filters: List[str] = field(
        default_factory=lambda: ["bel", "pl", "cp", "bel_min", "pl_min", "pl_k:2"])
    sample_sizes: List[int] = field(default_factory=lambda: [50, 100, 500, 1000])
    replications: int = 10000
    seed: int = 20180601
    events: str = "nonempty"
    workers: int = 1
    out_dir: str = "results"
    estimator: str = "relative_frequency"


@dataclass
class LoggingConfig:
    """Configuration for log output."""
    level: LogLevel = LogLevel.INFO
    log_file: Optional[str] = None


@dataclass
class FilterFuncConfig:
    """Main configuration class for filterfunc."""
    study: StudyConfig = field(default_factory=StudyConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    config_version: str = "1.0.0"

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the configuration to a dictionary."""
        data = asdict(self)
        data["logging"]["level"] = self.logging.level.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FilterFuncConfig':
        """Deserialize the configuration from a dictionary."""
        data = data or {}
        try:
            logging_data = dict(data.get('logging', {}))
            if 'level' in logging_data:
                logging_data['level'] = LogLevel(str(logging_data['level']).upper())
            return cls(
                study=StudyConfig(**data.get('study', {})),
                logging=LoggingConfig(**logging_data),
                config_version=str(data.get('config_version', '1.0.0')),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid configuration: {e}") from e


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ConfigManager:
    """Manages loading, saving, and validating the filterfunc configuration."""
    def __init__(self, config_dir: Optional[str] = None):
        """Initialize the configuration manager."""
        self.config_dir = Path(config_dir) if config_dir else Path.cwd()
        self.config_file = self.config_dir / "filterfunc.yaml"
        self.config: Optional[FilterFuncConfig] = None

    def load_config(self, config_path: Optional[str] = None) -> FilterFuncConfig:
        """Load the configuration from a file, or defaults when there is none.

        Environment overrides are applied on top, then the result is validated.
        """
        config_file = Path(config_path) if config_path else self.config_file

        if config_file.exists():
            if config_file.suffix not in ('.yaml', '.yml', '.json'):
                raise ConfigError(f"Unsupported config file format: {config_file.suffix}")
            try:
                text = config_file.read_text(encoding='utf-8')
                if config_file.suffix == '.json':
                    data = json.loads(text)
                else:
                    data = yaml.safe_load(text)
            except (OSError, yaml.YAMLError, json.JSONDecodeError) as e:
                raise ConfigError(f"Failed to load configuration {config_file}: {e}") from e
            if data is not None and not isinstance(data, dict):
                raise ConfigError(f"{config_file} must contain a mapping")
            self.config = FilterFuncConfig.from_dict(data or {})
            logger.info("Configuration loaded from %s", config_file)
        elif config_path:
            raise ConfigError(f"Configuration file {config_file} does not exist")
        else:
            logger.info("No configuration file found, using defaults")
            self.config = self._create_default_config()

        self.apply_environment()
        errors = self.validate_config(self.config)
        if errors:
            raise ConfigError("; ".join(errors))
        return self.config

    def apply_environment(self) -> None:
        """Apply FILTERFUNC_* overrides from the environment (and .env)."""
        load_dotenv(Path.cwd() / ".env")
        env = {
            "seed": os.getenv(ENV_PREFIX + "SEED"),
            "replications": os.getenv(ENV_PREFIX + "REPLICATIONS"),
            "workers": os.getenv(ENV_PREFIX + "WORKERS"),
            "out_dir": os.getenv(ENV_PREFIX + "OUT_DIR"),
        }
        study = self.config.study
        for key, raw in env.items():
            if raw is None or not raw.strip():
                continue
            if key == "out_dir":
                study.out_dir = raw.strip()
                continue
            try:
                setattr(study, key, int(raw))
            except ValueError as e:
                raise ConfigError(f"{ENV_PREFIX}{key.upper()} must be an integer, got {raw!r}") from e
        level = os.getenv(ENV_PREFIX + "LOG_LEVEL")
        if level:
            try:
                self.config.logging.level = LogLevel(level.strip().upper())
            except ValueError as e:
                raise ConfigError(f"{ENV_PREFIX}LOG_LEVEL {level!r} is not a log level") from e

    def save_config(self, config: Optional[FilterFuncConfig] = None,
                    path: Optional[Path] = None) -> bool:
        """Save the configuration as YAML, to ``path`` or the default config file.

        Loading the file with ``--config`` repeats the run.
        """
        if config:
            self.config = config

        if not self.config:
            logger.error("No configuration to save")
            return False

        target = Path(path) if path else self.config_file
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(
                yaml.dump(self.config.to_dict(), default_flow_style=False, indent=2),
                encoding='utf-8')
            logger.info("Configuration saved to %s", target)
            return True
        except OSError as e:
            logger.error("Failed to save configuration: %s", e)
            return False

    def _create_default_config(self) -> FilterFuncConfig:
        """Create a default configuration."""
        return FilterFuncConfig()

    def validate_config(self, config: FilterFuncConfig) -> List[str]:
        """Validate the configuration and return a list of errors, if any."""
        errors = []
        study = config.study

        if not isinstance(study.filters, list) or not all(
                isinstance(name, str) for name in study.filters):
            errors.append("Filters must be a list of filter names")
        elif not study.filters:
            errors.append("At least one filter is required")
        if not isinstance(study.sample_sizes, list) or not study.sample_sizes or any(
                not _is_int(n) or n < 1 for n in study.sample_sizes):
            errors.append("Sample sizes must be a list of positive integers")
        if not _is_int(study.replications) or study.replications < 1:
            errors.append("Replications must be a positive integer")
        if not _is_int(study.seed) or not 0 <= study.seed < 2 ** 64:
            errors.append("Seed must be an unsigned 64-bit integer")
        if not _is_int(study.workers) or study.workers < 1:
            errors.append("Workers must be a positive integer")
        if not isinstance(study.out_dir, str) or not study.out_dir:
            errors.append("Output directory must be a path")
        if study.model_path is not None and not isinstance(study.model_path, str):
            errors.append("Model path must be a path")
        if not isinstance(study.events, str) or not isinstance(study.estimator, str):
            errors.append("Events and estimator must be names")
            return errors
        if study.events not in EVENT_SELECTORS:
            errors.append(f"Events must be one of {', '.join(EVENT_SELECTORS)}")
        if study.estimator not in ESTIMATORS:
            errors.append(f"Estimator must be one of {', '.join(ESTIMATORS)}")
        if config.logging.log_file is not None and not isinstance(config.logging.log_file, str):
            errors.append("Log file must be a path")

        return errors


class Logger:
    """Logger setup and management for the application."""
    @staticmethod
    def setup_logging(log_level: LogLevel = LogLevel.INFO,
                      log_file: Optional[str] = None) -> None:
        """Set up logging with the specified log level and handlers.

        The console handler writes to stderr so tables on stdout stay clean.
        """
        root_logger = logging.getLogger()
        root_logger.handlers.clear()

        root_logger.setLevel(getattr(logging, log_level.value))

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

        if log_file:
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)


def ensure_directory_exists(directory: Path) -> bool:
    """Ensure that a directory exists, creating it if necessary."""
    try:
        directory.mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error("Failed to create directory %s: %s", directory, e)
        return False


def format_duration(seconds: float) -> str:
    """Format a duration in seconds into a human-readable string."""
    minutes, seconds = divmod(seconds, 60)
    hours, minutes = divmod(int(minutes), 60)
    if hours > 0:
        return f"{hours}h {minutes}m {seconds:.0f}s"
    elif minutes > 0:
        return f"{minutes}m {seconds:.0f}s"
    else:
        return f"{seconds:.2f}s"

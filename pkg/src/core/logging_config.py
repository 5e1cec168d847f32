"""
Centralized logging configuration for rhombiflip.

This module provides logging setup with a console handler on stderr,
optional rotating log files, a custom formatter that renders operation
markers, and a filter that collects search and enumeration records.
"""

import logging
import os
import sys
from pathlib import Path
from logging.handlers import RotatingFileHandler
from typing import Optional

OPERATION_MARKERS = (
    'lifecycle_stage',
    'service_operation',
    'graph_operation',
    'word_operation',
    'surface_operation',
    'config_operation',
)


class CustomFormatter(logging.Formatter):
    """
    Custom formatter that appends operation markers to log records.
    """

    def format(self, record):
        """Format log record with additional context information."""
        operations = []
        for attr in OPERATION_MARKERS:
            if hasattr(record, attr):
                operations.append(f"{attr}={getattr(record, attr)}")

        if operations:
            record.operations = f" [{', '.join(operations)}]"
        else:
            record.operations = ""

        return super().format(record)


class SearchFilter(logging.Filter):
    """
    Filter to only log search and enumeration related messages.
    """

    components = (
        'src.services.flip_graph',
        'src.services.gn3_words',
        'src.services.surface_tiling',
    )
    keywords = ('budget', 'states', 'closed path', 'frontier', 'search')

    def filter(self, record):
        """Keep records from the search components or mentioning search keywords."""
        if record.name in self.components:
            return True

        message = record.getMessage().lower()
        return any(keyword in message for keyword in self.keywords)


class LoggingConfig:
    """
    Centralized logging configuration manager.
    """

    def __init__(self, log_dir: Optional[str] = None, log_level: Optional[str] = None):
        """
        Initialize logging configuration.

        Args:
            log_dir: Directory for log files; no files are written when None
            log_level: Root logging level (defaults to WARNING)
        """
        self.log_dir = Path(log_dir) if log_dir else None
        self.log_level = getattr(logging, (log_level or "WARNING").upper(), logging.WARNING)
        self.formatter = CustomFormatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s%(operations)s'
        )

    def setup_logging(self) -> None:
        """
        Setup logging configuration.

        Creates:
        - Console handler on stderr at the configured level
        - When a log directory is set: rhombiflip.log (INFO+), rhombiflip_debug.log
          (DEBUG+) and search.log (search specific), all rotating
        """
        root_logger = logging.getLogger()
        root_logger.handlers.clear()

        self._setup_console_handler(root_logger)
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            self._setup_main_file_handler(root_logger)
            self._setup_debug_file_handler(root_logger)
            self._setup_search_file_handler(root_logger)
            root_logger.setLevel(logging.DEBUG)
        else:
            root_logger.setLevel(self.log_level)

        self._configure_component_loggers()

    def _setup_console_handler(self, root_logger: logging.Logger) -> None:
        """Setup console logging handler; stdout stays reserved for command output."""
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(self.log_level)
        console_handler.setFormatter(self.formatter)
        root_logger.addHandler(console_handler)

    def _setup_main_file_handler(self, root_logger: logging.Logger) -> None:
        """Setup main application log file handler."""
        main_file_handler = RotatingFileHandler(
            self.log_dir / "rhombiflip.log",
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        main_file_handler.setLevel(logging.INFO)
        main_file_handler.setFormatter(self.formatter)
        root_logger.addHandler(main_file_handler)

    def _setup_debug_file_handler(self, root_logger: logging.Logger) -> None:
        """Setup debug log file handler."""
        debug_file_handler = RotatingFileHandler(
            self.log_dir / "rhombiflip_debug.log",
            maxBytes=50*1024*1024,  # 50MB
            backupCount=3
        )
        debug_file_handler.setLevel(logging.DEBUG)
        debug_file_handler.setFormatter(self.formatter)
        root_logger.addHandler(debug_file_handler)

    def _setup_search_file_handler(self, root_logger: logging.Logger) -> None:
        """Setup search specific log file handler."""
        search_handler = RotatingFileHandler(
            self.log_dir / "search.log",
            maxBytes=20*1024*1024,  # 20MB
            backupCount=5
        )
        search_handler.setLevel(logging.INFO)
        search_handler.setFormatter(self.formatter)
        search_handler.addFilter(SearchFilter())
        root_logger.addHandler(search_handler)

    def _configure_component_loggers(self) -> None:
        """Configure logging levels for specific components."""
        logging.getLogger('uvicorn').setLevel(logging.INFO)
        logging.getLogger('uvicorn.access').setLevel(logging.WARNING)
        logging.getLogger('fastapi').setLevel(logging.INFO)
        logging.getLogger('src.core.config').setLevel(logging.INFO)

    def summary(self) -> str:
        """One-line description of the active handlers."""
        if self.log_dir is None:
            return f"console only (level {logging.getLevelName(self.log_level)})"
        return (
            f"console + files in {self.log_dir.absolute()} "
            "(rhombiflip.log, rhombiflip_debug.log, search.log)"
        )


def setup_logging(log_dir: Optional[str] = None, log_level: Optional[str] = None) -> LoggingConfig:
    """
    Setup logging with default configuration.

    Args:
        log_dir: Directory for log files (none when omitted)
        log_level: Root logging level (defaults to WARNING)

    Returns:
        The applied LoggingConfig.
    """
    config = LoggingConfig(log_dir=log_dir, log_level=log_level)
    config.setup_logging()
    return config


def setup_logging_from_env(default_level: str = "WARNING") -> LoggingConfig:
    """
    Setup logging using environment variables.

    Environment Variables:
        LOG_DIR: Directory for log files
        LOG_LEVEL: Root logging level (DEBUG, INFO, WARNING, ERROR)
    """
    log_dir = os.getenv('LOG_DIR')
    log_level = os.getenv('LOG_LEVEL') or default_level
    return setup_logging(log_dir=log_dir, log_level=log_level)

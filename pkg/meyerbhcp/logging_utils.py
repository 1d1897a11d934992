import logging
import os

DEFAULT_LOGGER = 'meyerbhcp'
LOG_LEVEL_ENV_VAR = 'BHCP_LOG_LEVEL'
FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

_configured = False


def get_logger(logger_name: str = DEFAULT_LOGGER) -> logging.Logger:
    """
    Returns a logger below the package logger, configuring the package
    logger with a single stream handler on first use.
    """
    global _configured
    root = logging.getLogger(DEFAULT_LOGGER)
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMAT))
        root.addHandler(handler)
        root.setLevel(os.environ.get(LOG_LEVEL_ENV_VAR, 'INFO').upper())
        root.propagate = False
        _configured = True
    if logger_name == DEFAULT_LOGGER or logger_name.startswith(DEFAULT_LOGGER + '.'):
        return logging.getLogger(logger_name)
    return root.getChild(logger_name)

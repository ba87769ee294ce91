import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "metaparadox"


def set_log_level(level: int) -> None:
    """Route the package's log records to stderr at the given level."""
    logger = logging.getLogger("metaparadox")
    logger.setLevel(level)
    if not any(handler.get_name() == _HANDLER_NAME for handler in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
        )
        handler.set_name(_HANDLER_NAME)
        logger.addHandler(handler)
        logger.propagate = False

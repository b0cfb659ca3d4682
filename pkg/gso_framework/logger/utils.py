import logging
import typing as T
from logging.handlers import QueueHandler, QueueListener
from multiprocessing import Queue
from multiprocessing.context import BaseContext

from gso_framework.logger.formatter import JsonFormatter


def get_console_handler() -> logging.StreamHandler:
    console_handler = logging.StreamHandler()
    format_string = "%(levelname)s:%(name)s:%(message)s"
    console_handler.setFormatter(logging.Formatter(format_string))
    return console_handler


def get_file_handler(path: str) -> logging.FileHandler:
    """JSON-lines log file, one record per line."""
    file_handler = logging.FileHandler(path, encoding="utf-8")
    file_handler.setFormatter(JsonFormatter())
    return file_handler


def setup_logging(ctx: BaseContext, log_file: T.Optional[str] = None) -> T.Tuple[Queue, QueueListener]:
    """
    Sets up a QueueListener that listens to the main logging queue and passes data to the handlers
    The handlers are generated here, there are two handlers:
        - Console logging
        - JSON file logging, only when log_file is given
    Returns the queue for logging + the listener
    Don't forget to start the listener
    """
    log_queue = ctx.Queue()
    handlers: T.List[logging.Handler] = [get_console_handler()]

    if log_file:
        handlers.append(get_file_handler(log_file))

    listener = QueueListener(log_queue, *handlers)
    return log_queue, listener


def start_logging(ctx: BaseContext, log_level: str = "INFO",
                  log_file: T.Optional[str] = None) -> T.Tuple[Queue, QueueListener]:
    """Starts the listener and routes the root logger of the current process to the queue."""
    log_queue, listener = setup_logging(ctx, log_file)
    listener.start()

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level.upper())
    root_logger.handlers.clear()
    root_logger.addHandler(QueueHandler(log_queue))

    return log_queue, listener

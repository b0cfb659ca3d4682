from .formatter import JsonFormatter
from .utils import get_console_handler, get_file_handler, setup_logging, start_logging

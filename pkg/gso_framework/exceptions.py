class ConfigError(Exception):
    """Invalid experiment configuration, dataset manifest or command-line value."""


class DatasetError(Exception):
    """The dataset file cannot be read or cannot satisfy the requested split sizes."""

import os
import logging
import json

from logging.handlers import RotatingFileHandler

CONFIG_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "config", "cfg.json")
LOGGER_NAME = "tphw"


class SimpleLogger:
    """
    Rotating-file logger for the weave toolkit.

    Every record is a single line `[time][LEVEL] message | json(obj)`, so numerical
    runs (clearance, sweeps, optimizer iterations, exports) can be grepped and
    their payloads parsed back.

    Attributes:
        logger (logging.Logger): The underlying named logger.
    """

    def __init__(
        self,
        log_filename="tphw.log",
        max_size=1_000_000,
        backup_count=5,
    ):
        """
        Args:
            log_filename (str): The name of the log file.
            max_size (int): The maximum size of a log file before rotation occurs (in bytes).
            backup_count (int): The number of backup files to keep.

        Raises:
            ValueError: If the log directory is not found in the configuration file.
        """
        log_folder = self.get_log_dir()

        if not log_folder:
            raise ValueError("Log directory not found in config file")

        os.makedirs(log_folder, exist_ok=True)
        log_path = os.path.join(log_folder, log_filename)

        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(self.get_log_level())
        self.logger.propagate = False

        # One file handler per process, even if the logger is rebuilt
        if not any(isinstance(h, RotatingFileHandler) for h in self.logger.handlers):
            handler = RotatingFileHandler(
                log_path, maxBytes=max_size, backupCount=backup_count, encoding="utf-8"
            )
            handler.setFormatter(logging.Formatter("[%(asctime)s][%(levelname)s] %(message)s"))
            self.logger.addHandler(handler)

    # --------------------------
    # Log functions
    # --------------------------

    def log(self, message, obj=None, level="INFO"):
        """
        Log a message at the specified level, optionally including an object.

        Args:
            message (str): The log message.
            obj (Any): An optional object appended as JSON.
            level (str): "DEBUG", "INFO", "WARNING" or "ERROR".
        """
        levels = {
            "DEBUG": logging.DEBUG,
            "INFO": logging.INFO,
            "WARNING": logging.WARNING,
            "ERROR": logging.ERROR,
        }
        self._log_with_object(levels.get(level, logging.INFO), message, obj)

    def log_info(self, message, obj=None):
        self._log_with_object(logging.INFO, message, obj)

    def log_warning(self, message, obj=None):
        self._log_with_object(logging.WARNING, message, obj)

    def log_error(self, message, obj=None):
        self._log_with_object(logging.ERROR, message, obj)

    def log_debug(self, message, obj=None):
        self._log_with_object(logging.DEBUG, message, obj)

    def _log_with_object(self, level, message, obj):
        """
        Emit one record, flattening `obj` to JSON and stripping newlines.

        Args:
            level (int): logging level constant.
            message (str): The log message.
            obj (Any): An optional payload (numpy scalars and arrays go through default=str).
        """
        if obj is not None:
            try:
                obj_str = json.dumps(obj, default=_json_default)
            except (TypeError, ValueError):
                obj_str = repr(obj)
            message = f"{message} | {obj_str}"

        if isinstance(message, str):
            message = message.replace("\n", "\\n")

        try:
            self.logger.log(level, message)
        except IOError as e:
            print(f"ERROR: Could not write to log file. Reason: {e}")

    # --------------------------
    # System Utils
    # --------------------------

    def get_log_dir(self):
        """
        Retrieve the log folder path, honouring `__CONFIG_OVERRIDE_log_dir`.

        Returns:
            Optional[str]: The log folder path, or None if not found.
        """
        return _read_config("log_dir")

    def get_log_level(self):
        level = _read_config("log_level") or "INFO"
        return getattr(logging, str(level).upper(), logging.INFO)


def _read_config(key):
    env_key = f"__CONFIG_OVERRIDE_{key}"
    if env_key in os.environ:
        return os.getenv(env_key)

    if os.path.exists(CONFIG_FILE):
        with open(CONFIG_FILE, "r", encoding="utf-8") as f:
            return json.load(f).get(key)

    return None


def _json_default(value):
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "model_dump"):
        return value.model_dump()
    return str(value)


# ----------------------------
# Generic Log Function Export
# ----------------------------
def _log(message, obj=None, level="INFO"):
    """
    A generic function to log a message at the specified level.

    Args:
        message (str): The log message.
        obj (Any): An optional object to include in the log message.
        level (str): The log level (e.g., "INFO", "WARNING", "ERROR", "DEBUG").
    """
    global logger

    if "logger" not in globals() or logger is None:
        logger = SimpleLogger()

    return logger.log(message=message, obj=obj, level=level)

import os
import json
from typing import Any, Union

from services.logger.Logger import _log

SRC_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_FILE = os.path.join(SRC_DIR, "config", "cfg.json")


class AppData:
    """
    Access to the toolkit configuration and small file helpers.

    Configuration lives in `src/config/cfg.json`; any key can be overridden with
    the environment variable `__CONFIG_OVERRIDE_<key>`. Overrides are coerced to
    the type of the file default so numeric tunables stay numeric.
    """

    def __init__(self):
        pass

    # --------------------------
    # System Utils
    # --------------------------

    def _load_config_file(self) -> dict:
        if not os.path.exists(CONFIG_FILE):
            return {}
        with open(CONFIG_FILE, "r", encoding="utf-8") as f:
            return json.load(f)

    def get_config(self, key: str, default: Any = None) -> Any:
        """
        Retrieve a configuration value.

        Args:
            key (str): The specific key in the configuration file.
            default (Any): Returned when the key is absent everywhere.

        Returns:
            Any: The configuration value.
        """
        data = self._load_config_file()
        file_value = data.get(key, default)

        env_key = f"__CONFIG_OVERRIDE_{key}"
        if env_key in os.environ:
            return self._coerce(os.environ[env_key], file_value)

        return file_value

    @staticmethod
    def _coerce(raw: str, like: Any) -> Any:
        """Convert an environment string to the type of the file default."""
        try:
            if isinstance(like, bool):
                return raw.strip().lower() in ("1", "true", "yes", "on")
            if isinstance(like, int):
                return int(raw)
            if isinstance(like, float):
                return float(raw)
        except ValueError:
            _log(f"Config override '{raw}' does not parse as {type(like).__name__}; using it as text", level="WARNING")
        return raw

    def resolve_path(self, path: str) -> str:
        """
        Resolve a config path: absolute paths stay, relative ones are taken from `src/`.
        """
        if os.path.isabs(path):
            return path
        return os.path.normpath(os.path.join(SRC_DIR, path))

    def get_catalog_file(self) -> str:
        return self.resolve_path(self.get_config("catalog_file", "config/catalog.yml"))

    def get_cache_dir(self) -> str:
        return self.get_config("cache_dir", "./data/.cache")

    # --------------------------
    # File Operations
    # --------------------------

    def _save_file(self, file_path: str, data: Union[str, bytes, dict]) -> bool:
        """
        Save data to a file, creating the parent folder.

        Args:
            file_path (str): The destination path.
            data (Union[str, bytes, dict]): Text, raw bytes, or a dict written as indented JSON.

        Returns:
            bool: True if saved successfully, False otherwise.
        """
        folder = os.path.dirname(os.path.abspath(file_path))
        try:
            os.makedirs(folder, exist_ok=True)
        except OSError as e:
            _log(f"Error creating directory {folder}: {e}", level="ERROR")
            return False

        try:
            if isinstance(data, dict):
                with open(file_path, "w", encoding="utf-8", newline="\n") as f:
                    json.dump(data, f, indent=4)
            elif isinstance(data, str):
                with open(file_path, "w", encoding="utf-8", newline="\n") as f:
                    f.write(data)
            elif isinstance(data, (bytes, bytearray)):
                with open(file_path, "wb") as f:
                    f.write(data)
            else:
                _log(f"Unsupported data type: {type(data)}", level="ERROR")
                return False
            return True
        except OSError as e:
            _log(f"Error saving data to file {file_path}: {e}", level="ERROR")
            return False

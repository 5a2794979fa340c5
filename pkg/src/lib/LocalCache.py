import os
import hashlib
import time
import json
import pickle
from functools import wraps
from typing import Callable, Any

from services.AppData import AppData
from services.logger.Logger import _log

# --- Configuration ---
DEFAULT_CACHE_DIR = AppData().get_cache_dir()
DEFAULT_TTL_SECONDS = AppData().get_config("cache_ttl_s", 86400)


class LocalCache:
    """
    Local file cache for function return values.

    Used to memoize expensive geometry results (pairwise distance witnesses)
    across runs. TTL is assigned on `set` and checked on `get`. Values are stored
    as JSON when possible, otherwise Pickle.
    """

    _instance = None

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super(LocalCache, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, cache_dir: str = DEFAULT_CACHE_DIR):
        if self._initialized:
            return

        self.cache_dir = cache_dir
        os.makedirs(self.cache_dir, exist_ok=True)
        self._initialized = True

    def _get_file_path(self, key: str, ext: str = "") -> str:
        path = os.path.join(self.cache_dir, key[:2])
        os.makedirs(path, exist_ok=True)
        return os.path.join(path, key + ext)

    def _is_expired(self, expire_at: float) -> bool:
        return time.time() > expire_at

    def _save_to_cache(self, key: str, result: Any, ttl_s: int) -> None:
        """
        Saves a result wrapped as {"expire_at": timestamp, "value": result},
        JSON first and Pickle for values JSON cannot carry.
        """
        wrapped = {"expire_at": time.time() + ttl_s, "value": result}
        json_cache_path = self._get_file_path(key, ext=".json")
        pickle_cache_path = self._get_file_path(key, ext=".pkl")

        try:
            with open(json_cache_path, "w") as f:
                json.dump(wrapped, f)
            if os.path.exists(pickle_cache_path):
                os.remove(pickle_cache_path)
        except TypeError:
            # a partial JSON file may be left behind
            if os.path.exists(json_cache_path):
                os.remove(json_cache_path)
            try:
                with open(pickle_cache_path, "wb") as f:
                    pickle.dump(wrapped, f)
            except Exception as e:
                _log(f"[Cache ERROR] Failed to save key '{key}': {e}", level="WARNING")
        except OSError as e:
            _log(f"[Cache ERROR] Failed to save key '{key}': {e}", level="WARNING")

    def _read_wrapped(self, path: str, binary: bool) -> Any:
        with open(path, "rb" if binary else "r") as f:
            return pickle.load(f) if binary else json.load(f)

    def _load_from_cache(self, key: str) -> Any:
        """Return the cached value for `key`, or None when missing, expired or corrupt."""
        for ext, binary in ((".json", False), (".pkl", True)):
            path = self._get_file_path(key, ext=ext)
            if not os.path.exists(path):
                continue
            try:
                wrapped = self._read_wrapped(path, binary)
            except Exception as e:
                _log(f"[Cache ERROR] Corrupt cache file for key '{key}': {e}", level="WARNING")
                os.remove(path)
                continue
            if self._is_expired(wrapped.get("expire_at", 0)):
                os.remove(path)
                return None
            return wrapped.get("value")
        return None

    # ---------------------
    # Decorator interface
    # ---------------------

    def cache(self, ttl_s: int = DEFAULT_TTL_SECONDS):
        """
        Memoize a function whose arguments are JSON-serializable.

        The key is the md5 of [function name, args, kwargs].
        """
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                args_str = json.dumps([func.__name__, args, kwargs], sort_keys=True)
                key = hashlib.md5(args_str.encode()).hexdigest()

                cached_value = self._load_from_cache(key)
                if cached_value is not None:
                    return cached_value

                result = func(*args, **kwargs)
                self._save_to_cache(key, result, ttl_s)
                return result
            return wrapper
        return decorator


# Initialize global cache handler
cache_handler = LocalCache()

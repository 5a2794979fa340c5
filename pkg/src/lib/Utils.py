import re
import json
import math
from numbers import Integral, Real


class Utils:

    # --------------------------
    # Name Utils
    # --------------------------

    @staticmethod
    def slugify(string: str) -> str:
        """
        Convert a weave name to its ASCII alias.

        Steps:
        - Convert to lowercase and replace spaces with hyphens.
        - Replace accented characters with ASCII equivalents.
        - Remove non-alphanumeric characters (angle brackets, trademark signs), keeping hyphens.
        - Remove leading/trailing hyphens and reduce multiple hyphens to one.

        Args:
            string (str): Input string to be slugified.

        Returns:
            str: Slugified version of the input string, e.g. "100-trefoil-laves".
        """
        slug = string.lower().replace(" ", "-")

        accents_mapping = {
            r"[àáâãäå]": "a",
            r"[èéêë]": "e",
            r"[ìíîï]": "i",
            r"[òóôõö]": "o",
            r"[ùúûü]": "u",
            r"[ñ]": "n",
            r"[ç]": "c",
        }
        for pattern, replacement in accents_mapping.items():
            slug = re.sub(pattern, replacement, slug)

        slug = re.sub(r"[^a-z0-9-]", "", slug)
        slug = re.sub(r"-+", "-", slug)
        return slug.strip("-")

    # --------------------------
    # JSON Utils
    # --------------------------

    @staticmethod
    def flatten_json_to_string(cell, parent_key: str = '', sep: str = '.') -> str:
        """
        Flatten a nested JSON-like cell into grouped 'key: value' strings.

        Args:
            cell (dict | list | any): The JSON object or list to flatten.
            parent_key (str, optional): Prefix key (used for nested dicts). Defaults to ''.
            sep (str, optional): Separator between nested keys. Defaults to '.'.

        Returns:
            str: Flattened string representation.
        """
        items = []

        if isinstance(cell, dict):
            for k, v in cell.items():
                new_key = f"{parent_key}{sep}{k}" if parent_key else k
                if isinstance(v, (dict, list)):
                    items.append(Utils.flatten_json_to_string(v, new_key, sep))
                else:
                    items.append(f"{new_key}: {v}")

        elif isinstance(cell, list):
            groups = []
            for item in cell:
                if isinstance(item, dict):
                    groups.append(Utils.flatten_json_to_string(item, parent_key, sep))
                else:
                    groups.append(str(item))
            joined = ", ".join(groups)
            return f"{parent_key}: [{joined}]" if parent_key else joined

        else:
            return f"{parent_key}: {cell}" if parent_key else str(cell)

        return ", ".join(items)

    @staticmethod
    def format17(value: float) -> str:
        """
        Decimal text of a float with 17 significant digits (exact float64 round trip).

        Raises:
            ValueError: For NaN or infinities, which JSON cannot carry.
        """
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite number {value}")
        text = f"{value:.17g}"
        if "." not in text and "e" not in text:
            text += ".0"
        return text

    @staticmethod
    def dumps17(obj, indent: int = 2, _level: int = 0) -> str:
        """
        Serialize to JSON with every float written by `format17`.

        Lists of scalars are kept on one line; dicts keep insertion order.

        Args:
            obj: dict / list / tuple / str / number / bool / None (numpy scalars accepted).
            indent (int): Spaces per nesting level.

        Returns:
            str: JSON text without a trailing newline.
        """
        pad = " " * (indent * (_level + 1))
        end = " " * (indent * _level)

        if obj is None:
            return "null"
        if isinstance(obj, bool):
            return "true" if obj else "false"
        if isinstance(obj, Integral):
            return str(int(obj))
        if isinstance(obj, Real):
            return Utils.format17(obj)
        if isinstance(obj, str):
            return json.dumps(obj, ensure_ascii=False)
        if hasattr(obj, "tolist"):
            return Utils.dumps17(obj.tolist(), indent, _level)
        if isinstance(obj, dict):
            if not obj:
                return "{}"
            body = ",\n".join(
                f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {Utils.dumps17(v, indent, _level + 1)}"
                for k, v in obj.items()
            )
            return "{\n" + body + "\n" + end + "}"
        if isinstance(obj, (list, tuple)):
            if not obj:
                return "[]"
            if all(not isinstance(v, (dict, list, tuple)) for v in obj):
                return "[" + ", ".join(Utils.dumps17(v, indent, _level + 1) for v in obj) + "]"
            body = ",\n".join(f"{pad}{Utils.dumps17(v, indent, _level + 1)}" for v in obj)
            return "[\n" + body + "\n" + end + "]"
        raise TypeError(f"cannot serialize object of type {type(obj).__name__}")

import json
import os
from copy import deepcopy
from typing import Any, Dict, List, Optional

import jsonschema
from jsonschema.exceptions import SchemaError, ValidationError

from hankelring.groebner.settings import DEFAULT_STEP_BUDGET

CONFIG_SCHEMA_PATH = os.path.join(
    os.path.dirname(os.path.dirname(__file__)), "verifier", "schemas", "config.schema.json"
)

BASE_PRESET = "desk"
RANGE_KEYS = ("t", "n", "k")
LIST_KEYS = ("primes", "suites")

PRESETS: Dict[str, dict] = {
    "desk": {
        "t": [2, 4],
        "n": [2, 4],
        "k": None,
        "primes": [2, 3, 5],
        "e_max": 2,
        "suites": ["all"],
        "step_budget": DEFAULT_STEP_BUDGET,
        "seed": 0,
        "samples": 20,
        "cache_dir": None,
        "workers": 1,
        "timings": False,
    },
    "quick": {
        "t": [2, 3],
        "n": [2, 3],
        "primes": [2, 3],
        "e_max": 1,
        "step_budget": 10**6,
        "samples": 5,
    },
}


class ConfigurationError(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)


class SettingError(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)


class SchemaViolation(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(f"The settings do not conform to the run schema: {message}")


def _parse_value(text: str) -> Any:
    """A scalar, an `a:b` range, or a comma-separated list of scalars."""
    text = text.strip()
    if text.lower() in ("none", "null", ""):
        return None
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    if ":" in text:
        first, last = text.split(":", 1)
        return [int(first), int(last)]
    if "," in text:
        return [_parse_value(part) for part in text.split(",") if part.strip()]
    try:
        return int(text)
    except ValueError:
        return text


def parse_key_value_settings(text: str) -> dict:
    """
    Settings from `key = value` lines. `#` starts a comment, lists are comma-separated and ranges
    are written `a:b`. A single integer given for t, n or k is the range [a, a].

    Raises
    ------
    ConfigurationError
        If a line is not of the form `key = value` or a value cannot be read.

    Example
    -------
    >>> parse_key_value_settings("t = 2:3\\nprimes = 2, 3  # small\\nsuites = invariants")
    {'t': [2, 3], 'primes': [2, 3], 'suites': ['invariants']}
    """
    settings = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"Line {number} is not of the form 'key = value': {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            parsed = _parse_value(value)
        except ValueError:
            raise ConfigurationError(
                f"Cannot read the value of '{key}' on line {number}: {value!r}"
            )
        if key in RANGE_KEYS and isinstance(parsed, int):
            parsed = [parsed, parsed]
        if key in LIST_KEYS and not isinstance(parsed, list):
            parsed = [parsed]
        settings[key] = parsed
    return settings


class ConfigurationManager:
    """
    Named run configurations for the verifier.

    A `configuration` is a named collection of settings: the (t, n, k) grid, the primes and
    Frobenius depth, the selected suites and the engine knobs. Configurations may be partial; the
    missing settings are taken from the "desk" preset, and the merged result must conform to
    `schemas/config.schema.json`. Configuration files hold a JSON list of objects:

    [
        {"name": "tiny", "settings": {"t": [2, 2], "n": [2, 3], "suites": ["invariants"]}},
        ...
    ]

    The presets "desk" and "quick" are always defined.

    Parameters
    ----------
    configurations : List[dict], optional
        Additional configurations, each with "name" and "settings" keys.
    initial_configuration : str, optional
        Name of the configuration to activate, "desk" by default.
    schema_path : str, optional
        Path of the settings schema.

    Raises
    ------
    ConfigurationError
        If the configuration list is malformed or the initial configuration is unknown.
    SchemaViolation
        If some merged configuration does not follow the schema.
    """

    configuration_list_schema: dict = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "description": "A list of named, possibly partial, run configurations.",
        "type": "array",
        "items": {
            "type": "object",
            "properties": {
                "name": {"type": "string", "minLength": 1},
                "settings": {"type": "object"},
            },
            "required": ["name", "settings"],
            "additionalProperties": False,
        },
    }

    def __init__(
        self,
        configurations: List[dict] = None,
        initial_configuration: str = BASE_PRESET,
        schema_path: str = CONFIG_SCHEMA_PATH,
    ) -> None:
        with open(schema_path, "r") as f:
            self.schema = json.load(f)
        self.check_schema(self.schema)

        self.configurations: Dict[str, dict] = {}
        for name, settings in PRESETS.items():
            self.define_configuration(name, settings)
        if configurations:
            try:
                jsonschema.validate(instance=configurations, schema=self.configuration_list_schema)
            except ValidationError as e:
                raise ConfigurationError(f"Malformed configuration list: {e.message}")
            for config in configurations:
                self.define_configuration(config["name"], config["settings"], override=True)

        self.active_configuration: Optional[str] = None
        self.apply_configuration(name=initial_configuration)

    @classmethod
    def from_json(
        cls, configurations_file_path: str, initial_configuration: str = BASE_PRESET
    ) -> "ConfigurationManager":
        """
        Load configurations from a JSON file, on top of the presets.

        Raises
        ------
        ConfigurationError
            If the file cannot be read or parsed.
        """
        try:
            with open(configurations_file_path, "r") as f:
                configurations = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(
                f"Cannot load configurations from {configurations_file_path}: {e}"
            )
        return cls(configurations=configurations, initial_configuration=initial_configuration)

    @staticmethod
    def check_schema(schema: dict) -> None:
        """
        Check the schema itself against the JSON Schema draft it declares in "$schema"; drafts 4,
        6 and 7 are supported, and 7 is assumed when none is declared.
        """
        specification = schema.get("$schema")
        validators = {
            "http://json-schema.org/draft-07/schema#": jsonschema.Draft7Validator,
            "http://json-schema.org/draft-06/schema#": jsonschema.Draft6Validator,
            "http://json-schema.org/draft-04/schema#": jsonschema.Draft4Validator,
            None: jsonschema.Draft7Validator,
        }
        if specification not in validators:
            raise SchemaError(f"JSON Schema specification ({specification}) is not supported.")
        validators[specification].check_schema(schema)

    def _check_key(self, key: str) -> None:
        if key not in self.schema["properties"]:
            known = sorted(self.schema["properties"])
            raise SettingError(f"Unknown setting '{key}'; known settings are {known}.")

    def validate_schema(self, settings: dict) -> None:
        try:
            jsonschema.validate(instance=settings, schema=self.schema)
        except ValidationError as e:
            raise SchemaViolation(e.message)

    def define_configuration(self, name: str, settings: dict, override: bool = False) -> None:
        """
        Add a configuration; missing settings come from the "desk" preset.

        Raises
        ------
        ConfigurationError
            If `override` is False and the name is taken.
        SchemaViolation
            If the merged settings do not follow the schema.
        """
        if not override and name in self.configurations:
            raise ConfigurationError(f"Configuration '{name}' already exists.")
        for key in settings:
            self._check_key(key)
        merged = deepcopy(PRESETS[BASE_PRESET])
        merged.update(deepcopy(settings))
        self.validate_schema(merged)
        self.configurations[name] = merged

    def load_key_value_file(self, path: str, name: str = "file", base: str = None) -> str:
        """
        Define a configuration from a `key = value` settings file, on top of the `base`
        configuration (the active one by default), and activate it.

        Raises
        ------
        ConfigurationError
            If the file cannot be read or parsed.
        """
        try:
            with open(path, "r") as f:
                parsed = parse_key_value_settings(f.read())
        except OSError as e:
            raise ConfigurationError(f"Cannot read settings file {path}: {e}")
        settings = deepcopy(self.get_configuration(base or self.active_configuration))
        for key in parsed:
            self._check_key(key)
        settings.update(parsed)
        self.define_configuration(name, settings, override=True)
        self.apply_configuration(name)
        return name

    def list_configurations(self) -> List[str]:
        return list(self.configurations.keys())

    def get_configuration(self, name: str) -> dict:
        try:
            return self.configurations[name]
        except KeyError:
            raise ConfigurationError(f"Configuration '{name}' has not been defined")

    def apply_configuration(self, name: str) -> None:
        if name not in self.configurations:
            raise ConfigurationError(f"Configuration '{name}' has not been defined")
        self.active_configuration = name

    def get_active_configuration(self) -> dict:
        if not self.active_configuration:
            raise ConfigurationError("No active configuration")
        return self.get_configuration(name=self.active_configuration)

    def get_setting(self, key: str) -> Any:
        """
        The value of a setting of the active configuration.

        Raises
        ------
        SettingError
            If the key is not a setting.

        Example
        -------
        >>> ConfigurationManager(initial_configuration="quick").get_setting("primes")
        [2, 3]
        """
        settings = self.get_active_configuration()
        if key not in settings:
            raise SettingError(f"Setting '{key}' not found amongst {sorted(settings)}.")
        return settings[key]

    def resolve(self, overrides: dict = None) -> dict:
        """
        The active settings with `overrides` on top, validated. Overrides set to None are ignored.
        """
        merged = deepcopy(self.get_active_configuration())
        for key, value in (overrides or {}).items():
            self._check_key(key)
            if value is not None:
                merged[key] = value
        self.validate_schema(merged)
        return merged

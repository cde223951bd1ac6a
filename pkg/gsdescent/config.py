import os
from dotenv import dotenv_values
from click import BadParameter
from collections import UserDict

from .utils import strtobool

class ConfigError(BadParameter):
    pass

class Config(UserDict):
    """Holds configuration for the gsdescent command line app.

    Values are loaded from .env files: example default values are in .env.example,
    and they can be copied to .env and overridden. Environment variables win over both.

    This object offers a dictionary-like interface, except that missing
    values return None rather than raising a KeyError.
    """
    DEFAULTS = {
        "GSDESCENT_WORKERS": "1",
        "GSDESCENT_SEED": "0",
        "GSDESCENT_FORMAT": "text",
        "GSDESCENT_PROPERTY_SAMPLES": "200",
        "GSDESCENT_PROGRESS": "true",
    }
    FORMATS = ("text", "json")

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.data.update({
            **self.DEFAULTS,
            **dotenv_values(".env.example"),
            **dotenv_values(".env"),
            **{k: v for k, v in os.environ.items() if k.startswith("GSDESCENT_")}
        })


    def __missing__(self, key):
        return None


    def get(self, key, default=None):
        if key in self.data:
            return self.data[key]
        return default


    def get_int(self, key, minimum=None):
        raw = self.get(key)
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be an integer, got {raw!r}")
        if minimum is not None and value < minimum:
            raise ConfigError(f"{key} must be at least {minimum}, got {value}")
        return value


    @property
    def workers(self):
        return self.get_int("GSDESCENT_WORKERS", minimum=1)

    @property
    def seed(self):
        return self.get_int("GSDESCENT_SEED")

    @property
    def property_samples(self):
        return self.get_int("GSDESCENT_PROPERTY_SAMPLES", minimum=1)

    @property
    def output_format(self):
        fmt = (self.get("GSDESCENT_FORMAT") or "text").lower()
        if fmt not in self.FORMATS:
            raise ConfigError(f"GSDESCENT_FORMAT must be one of {', '.join(self.FORMATS)}")
        return fmt

    @property
    def show_progress(self):
        try:
            return strtobool(self.get("GSDESCENT_PROGRESS", "true"))
        except ValueError:
            raise ConfigError("GSDESCENT_PROGRESS must be a truth value")

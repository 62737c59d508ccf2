"""A configuration dictionary with additional features."""

from typing import Any


class Config(dict):
    """
    A 'Config' is a dict holding one section of a configuration file.

    Nested sections are Configs themselves, so that ``cfg.section("sim")``
    chains without checking for missing keys at each level.
    """

    def __init__(self, d: dict | None = None):
        """
        Init the object.

        :param d: items of the configuration
        """
        super().__init__()
        for k, v in (d or {}).items():
            self[k] = Config(v) if isinstance(v, dict) else v

    # recursive exportation to pure python dict for json dumps
    @classmethod
    def __to_dict(cls, d: dict[str, Any]) -> dict[str, Any]:
        return {k: Config.__to_dict(v) if isinstance(v, dict) else v for k, v in d.items()}

    def to_dict(self) -> dict[str, Any]:
        """Convert the Config() to regular dict."""
        return Config.__to_dict(self)

    def section(self, k: str) -> "Config":
        """
        Sub-section k, empty when absent.

        :param k: section name
        :return: the section
        """
        v = self.get(k)
        return v if isinstance(v, Config) else Config()

    # Additional dict functions
    def set_ifdef(self, k: str, v: Any) -> None:
        """
        Shortcut function: init self[k] only if v is not None.

        Command-line overrides go through this, unset options keep the
        value from the file.

        :param k: name of value to add
        :param v: value to add
        """
        if v is not None:
            self[k] = v

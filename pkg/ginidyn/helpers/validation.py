import functools
import os
import pprint
from typing import Any

import jsonschema
from ruamel.yaml import YAML
from ruamel.yaml import YAMLError

from ginidyn import io
from ginidyn import PATH_SCHEMES
from ginidyn.helpers.exceptions import ValidationException

SCHEME_SUFFIX = "-scheme.yml"


@functools.lru_cache(maxsize=None)
def _load_validator(name: str) -> Any:
    """
    Read a scheme from the install tree and build its validator.

    :param name: scheme name (dist, simulate, verify)
    :raises ValidationException.InvalidSchemeError: missing or unreadable YAML
    :raises ValidationException.SchemeError: the YAML is not a valid JSON schema
    :return: a jsonschema validator instance

    # noqa: DAR401
    # noqa: DAR402
    """
    path = os.path.join(PATH_SCHEMES, f"{name}{SCHEME_SUFFIX}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            schema = YAML(typ="safe").load(fh)
    except (OSError, YAMLError) as er:
        raise ValidationException.InvalidSchemeError(schema=name) from er

    cls = jsonschema.validators.validator_for(schema)
    try:
        cls.check_schema(schema)
    except jsonschema.exceptions.SchemaError as er:
        raise ValidationException.SchemeError(name=name, content=str(schema), error=er.message) from er
    io.console.debug(f"Loaded scheme '{name}' ({cls.__name__})")
    return cls(schema)


class ValidationScheme:
    """
    A JSON schema, stored as YAML under ``ginidyn/schemes``, applied to
    distribution files and to ``simulate`` / ``verify`` configurations.

    Schemes are read once per process and shared by every instance.
    """

    @classmethod
    def available_schemes(cls) -> list[str]:
        """
        Names of the schemes shipped with ginidyn.

        :return: sorted scheme names
        """
        return sorted(
            f[: -len(SCHEME_SUFFIX)] for f in os.listdir(PATH_SCHEMES) if f.endswith(SCHEME_SUFFIX)
        )

    def __init__(self, schema_name: str):
        """
        :param schema_name: one of :meth:`available_schemes`
        """
        self.schema_name = schema_name
        self._validator = _load_validator(schema_name)

    def validate(self, content: Any, filepath: str) -> None:
        """
        Check a document against the scheme.

        Only the most relevant violation is reported, with its location in
        the document.

        :param content: the decoded JSON document
        :param filepath: where the document comes from, for error reports
        :raises ValidationException.FormatError: the document violates the scheme

        # noqa: DAR401
        # noqa: DAR402
        """
        error = jsonschema.exceptions.best_match(self._validator.iter_errors(content))
        if error is None:
            return

        fe = ValidationException.FormatError(reason=f"Invalid {self.schema_name} document")
        fe.add_dbg("file path", filepath)
        fe.add_dbg("validation schema", self.schema_name)
        fe.add_dbg("location", "/" + "/".join(str(p) for p in error.absolute_path))
        fe.add_dbg("validator error", error.message)
        fe.add_dbg("file content", pprint.pformat(content, compact=True, width=100))
        raise fe

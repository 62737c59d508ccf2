from typing import Any


class GinidynException(Exception):
    """Generic ginidyn error (custom errors will inherit of this)."""

    def __init__(
        self,
        reason: str,
        help_msg: str | None = None,
        dbg_info: dict[str, str | None] | None = None,
    ):
        """
        Constructor for generic errors.

        :param reason: the main error messages
        :param help_msg: a help message for the user
        :param dbg_info: a list of additional debug info
        """
        self._name = type(self).__name__
        self._reason = reason
        self._help_msg = help_msg
        self._dbg_info: dict[str, str | None] = dbg_info if dbg_info is not None else {}
        super().__init__("{} - {}".format(type(self).__name__, reason))

    def __str__(self) -> str:
        """
        Stringify an exception for pretty-printing.

        :return: the string.
        """
        name_msg = f"{self._name}: {self._reason}" + "\n"
        help_msg = f"    Help: {self._help_msg}\n" if self._help_msg else ""
        dbg_info = f"    Additional notes:\n{self.__dbg_str()}\n" if self._dbg_info != {} else ""
        from_msg = (
            f"    From previous error:\n{self.__cause__}" if self.__cause__ is not None else ""
        )
        return f"{name_msg}{help_msg}{dbg_info}{from_msg}"

    @property
    def dbg_info(self) -> dict[str, str | None]:
        """Debug infos attached to this error."""
        return self._dbg_info

    def add_dbg(self, name: str, info: Any) -> None:
        """Add debug info to the current exception."""
        self._dbg_info.setdefault(name, str(info))

    def __dbg_str(self) -> str:
        """
        Stringify the debug infos. These infos are stored as a dict initially.

        :return: a itemized string.
        """
        if self._dbg_info == {}:
            return ""
        w = max(len(k) for k in self._dbg_info.keys())
        return "\n".join([f"      - {k:<{w}}: {v}" for k, v in self._dbg_info.items()])


class CommonException(GinidynException):
    """Gathers exceptions commonly encountered by more specific namespaces."""

    class NotFoundError(GinidynException):
        """A file or an entry could not be found."""

    class IOError(GinidynException):
        """Communication error (FS) while processing data."""


class DistException(CommonException):
    """Distribution construction & validation errors."""

    class NegativeMassError(GinidynException):
        """An entry is below the negative tolerance."""

    class MassDefectError(GinidynException):
        """Total mass deviates from 1 beyond the mass tolerance."""

        def __init__(self, mass: float, tol_mass: float, reason: str = "Total mass is not 1"):
            super().__init__(
                reason=reason,
                help_msg="Distributions are never renormalized, fix the input weights.",
            )
            self.add_dbg("mass", repr(mass))
            self.add_dbg("tolerance", repr(tol_mass))

    class TruncationTooSmallError(GinidynException):
        """The truncation cannot hold the requested support."""

    class OutOfRangeError(GinidynException):
        """A state index lies outside {0..trunc}."""

    class FormatError(GinidynException):
        """A distribution file does not follow {"trunc": N, "probs": [...]}."""


class MetricException(CommonException):
    """Metric evaluation errors."""

    class ZeroMeanError(GinidynException):
        """The Gini index is undefined: zero mean on a non-Dirac input."""

    class InvalidOrderError(GinidynException):
        """lp distances need p >= 1."""


class DynamicsException(CommonException):
    """Mean-field integration errors."""

    class InvalidModelError(GinidynException):
        """The model specification is inconsistent."""

    class InvalidConfigError(GinidynException):
        """Integration settings are out of range."""

    class TruncationMismatchError(GinidynException):
        """The distribution truncation does not fit the model state space."""

    class InvalidInitialDatumError(GinidynException):
        """The initial datum is incompatible with the model."""

    class PositivityViolationError(GinidynException):
        """An entry went below -tol_neg during a step."""

        def __init__(self, value: float, index: int, reason: str = "Negative probability"):
            super().__init__(reason=reason, help_msg="The time step is likely too large.")
            self.add_dbg("value", repr(value))
            self.add_dbg("state", str(index))

    class MassDriftError(GinidynException):
        """Total mass drifted beyond tol_mass during a step."""

    class MeanDriftError(GinidynException):
        """Mean drifted beyond the truncation flux bound."""


class VerifierException(CommonException):
    """Inequality verification errors."""

    class NotApplicableError(GinidynException):
        """The check does not apply to this mean."""

    class NonIntegerMeanError(NotApplicableError):
        """The check only applies to integer means."""

    class IntegerMeanError(NotApplicableError):
        """The check only applies to non-integer means."""

    class InfeasibleMeanError(GinidynException):
        """No distribution on {0..trunc} has this mean."""

    class OracleLimitError(GinidynException):
        """The brute-force oracle only handles small supports."""

    class UnknownCheckError(GinidynException):
        """No check is registered under this name."""

        def __init__(self, name: str, known: list[str], reason: str = "Unknown check"):
            super().__init__(reason=reason, help_msg="Known checks: " + ", ".join(known))
            self.add_dbg("name", name)


class ValidationException(GinidynException):
    """Validation-specific exceptions."""

    class JsonError(GinidynException):
        """An error ocured when parsing an invalid JSON document."""

        def __init__(self, file: str, error: str):
            super().__init__(reason="Fail to load the following json")
            self.add_dbg("json file path", file)
            self.add_dbg("parser error", error)

    class FormatError(GinidynException):
        """The content does not comply the required format (schemes)."""

        def __init__(self, reason: str = "Invalid format"):
            super().__init__(reason=reason)

    class InvalidSchemeError(GinidynException):
        """The schema used to verify the content is not a valid YAML file."""

        def __init__(self, schema: str, reason: str = "Invalid Scheme provided"):
            super().__init__(reason=reason)
            self.add_dbg("schema", schema)

    class SchemeError(GinidynException):
        """The content is not a valid format (scheme)."""

        def __init__(
            self, name: str, content: str, error: str, reason: str = "Fail to verify schema"
        ):
            super().__init__(
                reason=reason,
                help_msg="Provided schemes should be static. If code haven't been"
                "changed, please report this error.",
            )
            self.add_dbg("schema", name)
            self.add_dbg("content", content)
            self.add_dbg("error", error)

"""
Module for parsing run configurations.

- :class:`~ConfigFile`: a JSON file on the disk, read and validated against
  its scheme.
- :class:`~SimulateConfigFile`: model, initial datum, integration settings
  and output of a ``simulate`` run.
- :class:`~VerifyConfigFile`: parameters and output of a ``verify`` sweep.

Relative paths inside a configuration are resolved from the directory of
the configuration file, and must exist when the file is parsed.
"""

import os
from typing import Any

from ginidyn import DEFAULT_TOL_MASS
from ginidyn import DEFAULT_TOL_NEG
from ginidyn import io
from ginidyn.backend.config import Config
from ginidyn.core import dist
from ginidyn.core.dist import Dist
from ginidyn.dynamics.models import ModelSpec
from ginidyn.dynamics.trajectory import SimConfig
from ginidyn.helpers import utils
from ginidyn.helpers.exceptions import CommonException
from ginidyn.helpers.validation import ValidationScheme
from ginidyn.verification.sweep import SweepConfig


class ConfigFile:
    """
    Handle one configuration file.

    :ivar _path: location of the file
    :ivar _scheme: name of the validation scheme
    :ivar _details: validated content
    """

    scheme: str = ""

    def __init__(self, path: str):
        """
        Load and validate a configuration file.

        :param path: the file
        """
        self._path: str = os.path.abspath(path)
        self._details: Config = Config()
        self._load_from_disk()
        self._check()

    # Private unguarded functions
    def _load_from_disk(self) -> None:
        """Read the JSON document."""
        io.console.debug(f"Loading {self.scheme} configuration {self._path}")
        self._details = Config(utils.read_json(self._path))

    def _check(self) -> None:
        """Validate a config according to its scheme, look at sub-classes."""
        ValidationScheme(self.scheme).validate(self._details.to_dict(), filepath=self._path)

    # Public safe functions
    @property
    def path(self) -> str:
        """Absolute location of the file."""
        return self._path

    @property
    def details(self) -> Config:
        """Validated content."""
        return self._details

    def resolve(self, path: str) -> str:
        """
        Resolve a path relative to the configuration directory.

        :param path: path as written in the configuration
        :raises CommonException.NotFoundError: the path does not exist
        :return: absolute path

        # noqa: DAR401
        # noqa: DAR402
        """
        full = path if os.path.isabs(path) else os.path.join(os.path.dirname(self._path), path)
        if not os.path.exists(full):
            raise CommonException.NotFoundError(
                "Configuration references a missing file",
                dbg_info={"config": self._path, "path": path},
            )
        return os.path.abspath(full)

    def output_path(self) -> str | None:
        """Output file from the 'output' section, relative to the config directory."""
        path = self._details.section("output").get("path")
        if path is None:
            return None
        return path if os.path.isabs(path) else os.path.join(os.path.dirname(self._path), path)

    def to_dict(self) -> dict[str, Any]:
        """Convert the Config() to regular dict."""
        return self._details.to_dict()


class SimulateConfigFile(ConfigFile):
    """Configuration of a ``simulate`` run."""

    scheme = "simulate"

    def _check(self) -> None:
        """Validate against the scheme, then resolve referenced files."""
        super()._check()
        initial = self._details.section("initial")
        if initial["kind"] == "file":
            if "file" not in initial:
                raise CommonException.NotFoundError(
                    "Initial datum of kind 'file' needs a 'file' entry",
                    dbg_info={"config": self._path},
                )
            self.resolve(initial["file"])

    def model(self) -> ModelSpec:
        """The model to integrate."""
        return ModelSpec.from_dict(self._details.section("model"))

    def sim(self) -> SimConfig:
        """Integration settings."""
        return SimConfig.from_dict(self._details.section("sim").to_dict())

    def initial(self) -> Dist:
        """
        Build the initial datum.

        :raises CommonException.NotFoundError: a parameter of the datum is missing
        :return: the datum, on sim.trunc unless read from probs or a file

        # noqa: DAR401
        # noqa: DAR402
        """
        initial = self._details.section("initial")
        sim = self._details.section("sim")
        kind = initial["kind"]
        trunc = sim["trunc"]
        tol_mass = sim.get("tol_mass", DEFAULT_TOL_MASS)
        tol_neg = sim.get("tol_neg", DEFAULT_TOL_NEG)

        needed = {"probs": "probs", "geometric": "mean", "dirac": "n", "shifted_bernoulli": "mean"}
        if kind in needed and needed[kind] not in initial:
            raise CommonException.NotFoundError(
                f"Initial datum of kind '{kind}' needs a '{needed[kind]}' entry",
                dbg_info={"config": self._path},
            )

        if kind == "probs":
            return dist.make_dist(initial["probs"], tol_mass=tol_mass, tol_neg=tol_neg)
        if kind == "file":
            return dist.load_dist(self.resolve(initial["file"]), tol_mass=tol_mass, tol_neg=tol_neg)
        if kind == "uniform":
            return dist.uniform(trunc)
        if kind == "geometric":
            return dist.geometric(initial["mean"], trunc)
        if kind == "dirac":
            return dist.dirac(initial["n"], trunc)
        return dist.shifted_bernoulli(initial["mean"], trunc)

    def output_format(self) -> str:
        """csv (default) or json."""
        return str(self._details.section("output").get("format", "csv"))


class VerifyConfigFile(ConfigFile):
    """Configuration of a ``verify`` sweep."""

    scheme = "verify"

    def sweep_config(
        self,
        seed: int | None = None,
        workers: int | None = None,
        corrupt: str | None = None,
    ) -> SweepConfig:
        """
        Sweep parameters, with command-line overrides.

        :param seed: overrides 'seed'
        :param workers: overrides 'workers'
        :param corrupt: check whose direction is flipped
        :return: the sweep configuration
        """
        params = Config(self._details.to_dict())
        params.pop("output", None)
        params.set_ifdef("seed", seed)
        params.set_ifdef("workers", workers)
        params.set_ifdef("corrupt", corrupt)
        return SweepConfig(**params)

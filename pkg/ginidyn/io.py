import atexit
import enum
import functools
import logging
import os
import sys
from typing import Any
from typing import Callable
from typing import Iterable

from rich.console import Console
from rich.markup import escape
from rich.progress import track
from rich.style import Style
from rich.table import Column
from rich.table import Table
from rich.theme import Theme
from typing_extensions import Self

import ginidyn

THEME = Theme(
    {
        "debug": Style(color="white"),
        "info": Style(color="bright_white"),
        "warning": Style(color="yellow", bold=True),
        "danger": Style(color="red", bold=True),
        "item": Style(color="red", bold=True),
    }
)


class Glyphs:
    """Markers used in tables and item lists, with an ASCII fallback."""

    UTF = {"passed": "✔", "failed": "✘", "skipped": "∅", "item": "⟢"}
    ASCII = {"passed": "V", "failed": "X", "skipped": "-", "item": "*"}

    def __init__(self, utf_support: bool = True):
        self._table = self.UTF if utf_support else self.ASCII

    def __getitem__(self, key: str) -> str:
        return self._table[key]


class Verbosity(enum.IntEnum):
    """
    Console verbosity, from quietest to most talkative.

    * COMPACT: results only.
    * DETAILED: per-check and per-row details.
    * INFO: adds progress messages (files written, sweep sizes).
    * LOG: adds integrator and sampler bookkeeping.
    * DEBUG: adds internals and full tracebacks with locals; the debug file is kept.
    """

    COMPACT = 0
    DETAILED = 1
    INFO = 2
    LOG = 3
    DEBUG = 4

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def fromstr(cls, level: str) -> Self | None:
        """Case-insensitive lookup, None for an unknown label."""
        return cls.__members__.get(level.upper())  # type: ignore

    @classmethod
    def all_levels(cls) -> list[Self]:
        return list(cls)  # type: ignore

    @classmethod
    def clamp(cls, verbose: int) -> Self:
        """Map a ``-v`` count to a level."""
        return cls(max(0, min(verbose, cls.DEBUG)))  # type: ignore


class GinidynConsole:
    """
    Every message of ginidyn goes through this object.

    Results go to stdout, diagnostics to stderr. All of them are mirrored in
    the ``ginidyn`` logger, which writes to ``ginidyn-debug-<pid>.log`` when a
    log file is attached. That file is removed at exit unless an exception was
    reported or the verbosity is DEBUG.
    """

    def __init__(self, color: bool = True, verbose: int = 0, logfile: bool = True):
        """
        :param color: colorize the output
        :param verbose: ``-v`` count, clamped to :class:`Verbosity`
        :param logfile: attach the debug log file in the working directory
        """
        self._verbosity = Verbosity.clamp(verbose)
        color_system = "auto" if color else None
        self._stdout = Console(color_system=color_system, theme=THEME)  # type: ignore
        self._stderr = Console(color_system=color_system, theme=THEME, stderr=True)  # type: ignore
        self._glyphs = Glyphs(utf_support=self._stdout.encoding.startswith("utf"))

        self._logger = logging.getLogger("ginidyn")
        self._logger.setLevel(logging.DEBUG)
        self._debugfile = os.path.join(".", ginidyn.NAME_DEBUG_FILE)
        self._keep_debugfile = self._verbosity >= Verbosity.DEBUG
        self._handler: logging.FileHandler | None = None
        if logfile:
            self._handler = logging.FileHandler(self._debugfile)
            self._handler.setLevel(logging.DEBUG)
            self._handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
            self._logger.addHandler(self._handler)
            atexit.register(self.delete_debug_file)

    def delete_debug_file(self) -> None:
        """Detach the log file and drop it, unless something worth reading was logged."""
        if self._handler is None:
            return
        self._logger.removeHandler(self._handler)
        self._handler.close()
        self._handler = None
        if not self._keep_debugfile and os.path.isfile(self._debugfile):
            os.remove(self._debugfile)

    @property
    def verbosity(self) -> Verbosity:
        return self._verbosity

    def _diag(self, level: Verbosity, tag: str, style: str, fmt: str) -> None:
        if self._verbosity >= level:
            self._stderr.print(f"[{style}]\\[{tag}] {fmt}[/{style}]", soft_wrap=True)

    # diagnostics, on stderr

    def debug(self, fmt: str) -> None:
        self._logger.debug(fmt)
        self._diag(Verbosity.DEBUG, "debug", "debug", fmt)

    def log(self, fmt: str) -> None:
        self._logger.debug(fmt)
        self._diag(Verbosity.LOG, "log", "debug", fmt)

    def info(self, fmt: str) -> None:
        self._logger.info(fmt)
        self._diag(Verbosity.INFO, "info", "info", fmt)

    def warning(self, fmt: str) -> None:
        self._logger.warning(fmt)
        self._diag(Verbosity.COMPACT, "warning", "warning", fmt)

    def error(self, fmt: str) -> None:
        self._logger.error(fmt)
        self._diag(Verbosity.COMPACT, "error", "danger", fmt)

    def exception(self, e: Exception) -> None:
        """Report an exception; the traceback is shown from LOG verbosity."""
        self._keep_debugfile = True
        if self._verbosity >= Verbosity.DEBUG:
            self._stderr.print_exception(word_wrap=True, show_locals=True, extra_lines=16)
        elif self._verbosity >= Verbosity.LOG:
            self._stderr.print_exception(extra_lines=3)
        self._stderr.print(f"[danger]\\[Exception] {escape(str(e))}[/danger]", soft_wrap=True)
        self._logger.exception(e)

    # results, on stdout

    def print(self, fmt: str = "") -> None:
        self._stdout.print(fmt, soft_wrap=True)
        self._logger.info("[PRINT] %s", fmt)

    def print_raw(self, txt: str) -> None:
        """Untouched text (no markup, no wrapping), e.g. JSON documents."""
        self._stdout.out(txt, highlight=False)

    def print_item(self, txt: str, depth: int = 1) -> None:
        self._stdout.print(f"{' ' * (depth * 2)}[item]{self.utf('item')}[/item] {txt}", soft_wrap=True)
        self._logger.info("[DISPLAY] * %s", txt)

    def print_rich(self, to_print: Any) -> None:
        self._stdout.print(to_print)

    def create_table(self, title: str, cols: list[Column]) -> Table:
        return Table(*cols, title=title)

    def progress_iter(self, it: Iterable, total: int | None = None) -> Iterable:
        """
        Wrap an iterable in a transient progress bar on stderr.

        :param it: the iterable
        :param total: number of items, when ``it`` has no len()
        :return: the wrapped iterable
        """
        return track(
            it,
            total=total,
            transient=True,
            console=self._stderr,
            complete_style="cyan",
            pulse_style="green",
            refresh_per_second=4,
            description="[red]In Progress...[red]",
        )

    def utf(self, k: str) -> str:
        """Glyph for ``k`` (passed, failed, skipped, item), ASCII on non-utf terminals."""
        return self._glyphs[k]


# library code logs through this one until the CLI calls init()
console: GinidynConsole = GinidynConsole(logfile=False)  # pylint: disable=invalid-name


def init(color: bool = True, verbose: int = 0) -> None:
    """Replace the module console, attaching the debug log file."""
    global console
    console.delete_debug_file()
    console = GinidynConsole(color=color, verbose=verbose)


def capture_exception(e_type: Any, status: int = 1) -> Callable[[Callable], Callable[..., Any]]:
    """
    Decorate a command so that errors of ``e_type`` are reported, then exit.

    :param e_type: exception class (or tuple of classes) to catch
    :param status: process exit status after the report
    :return: the decorator
    """

    def inner_function(func: Callable[..., Any]) -> Callable[..., Any]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except e_type as e:
                console.exception(e)
                sys.exit(status)

        return wrapper

    return inner_function

import json
import os
import tempfile
from contextlib import contextmanager
from typing import Any
from typing import IO
from typing import Iterator

from ginidyn import FLOAT_FORMAT
from ginidyn import io
from ginidyn.helpers.exceptions import CommonException
from ginidyn.helpers.exceptions import ValidationException

# ###################################
# ###     FILE MANIPULATION      ####
# ###################################


@contextmanager
def atomic_open(path: str) -> Iterator[IO[str]]:
    """Open a file for writing that only appears once fully written.

    Content goes to a temporary file in the destination directory, renamed
    over ``path`` on success and discarded on failure.

    :param path: final destination
    :raises CommonException.IOError: the destination directory cannot be written
    :yield: a text handle on the temporary file

    # noqa: DAR401
    # noqa: DAR402
    """
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(
            prefix=".{}.".format(os.path.basename(path)), suffix=".tmp", dir=directory
        )
    except OSError as e:
        raise CommonException.IOError(
            "Unable to write output", dbg_info={"path": path, "error": str(e)}
        ) from e

    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
        os.replace(tmp_path, path)
        io.console.debug(f"Wrote {path}")
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_json(path: str, content: Any) -> None:
    """Atomically dump a JSON document (stable key order, 2-space indent).

    :param path: destination file
    :param content: any json-serializable value
    """
    with atomic_open(path) as fh:
        fh.write(dump_json(content))


def dump_json(content: Any) -> str:
    """Serialize to the JSON text format used for every ginidyn output.

    :param content: any json-serializable value
    :return: the document, newline-terminated
    """
    return json.dumps(content, indent=2, sort_keys=False, allow_nan=False) + "\n"


def read_json(path: str) -> Any:
    """Load a JSON document from disk.

    :param path: file to read
    :raises CommonException.NotFoundError: the file does not exist
    :raises ValidationException.JsonError: the file is not valid JSON
    :return: the decoded document

    # noqa: DAR401
    # noqa: DAR402
    """
    if not os.path.isfile(path):
        raise CommonException.NotFoundError("No such file", dbg_info={"path": path})
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValidationException.JsonError(path, str(e)) from e


# ###################################
# ###           MISC.            ####
# ###################################


def format_float(value: float | None) -> str:
    """Render a number for CSV output, an empty cell standing for 'not applicable'.

    :param value: the number, or None
    :return: the text cell
    """
    if value is None:
        return ""
    return format(value, FLOAT_FORMAT)

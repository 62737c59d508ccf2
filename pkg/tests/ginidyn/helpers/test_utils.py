import json
import math
import os

import pytest
from click.testing import CliRunner

from ginidyn.helpers import utils as tested
from ginidyn.helpers.exceptions import CommonException
from ginidyn.helpers.exceptions import ValidationException


def test_atomic_open():
    with CliRunner().isolated_filesystem():
        with tested.atomic_open("A/B/out.txt") as fh:
            fh.write("content")
            assert not os.path.exists("A/B/out.txt")
        assert os.listdir("A/B") == ["out.txt"]
        with open("A/B/out.txt", encoding="utf-8") as fh:
            assert fh.read() == "content"


def test_atomic_open_failure_leaves_nothing():
    class Failure(Exception):
        pass

    with CliRunner().isolated_filesystem():
        with pytest.raises(Failure):
            with tested.atomic_open("out.txt") as fh:
                fh.write("partial")
                raise Failure()
        assert os.listdir(".") == []


def test_atomic_open_keeps_previous_content_on_failure():
    with CliRunner().isolated_filesystem():
        tested.write_json("out.json", {"a": 1})
        with pytest.raises(ValueError):
            with tested.atomic_open("out.json") as fh:
                fh.write(tested.dump_json({"a": math.nan}))
        assert tested.read_json("out.json") == {"a": 1}


def test_dump_json():
    assert tested.dump_json({"b": 1, "a": [0.5]}) == '{\n  "b": 1,\n  "a": [\n    0.5\n  ]\n}\n'
    with pytest.raises(ValueError):
        tested.dump_json({"a": math.inf})


def test_read_json():
    with CliRunner().isolated_filesystem():
        with open("ok.json", "w", encoding="utf-8") as fh:
            json.dump({"trunc": 1}, fh)
        assert tested.read_json("ok.json") == {"trunc": 1}

        with open("bad.json", "w", encoding="utf-8") as fh:
            fh.write("{'trunc': 1,")
        with pytest.raises(ValidationException.JsonError):
            tested.read_json("bad.json")

        with pytest.raises(CommonException.NotFoundError):
            tested.read_json("missing.json")


@pytest.mark.parametrize(
    "value,expected",
    [(None, ""), (0.0, "0"), (0.1, "0.10000000000000001"), (1 / 3, "0.33333333333333331"), (2.0, "2")],
)
def test_format_float(value, expected):
    assert tested.format_float(value) == expected


def test_format_float_roundtrip():
    for value in (math.pi, 1e-17, 0.15, 123456.789e-3):
        assert float(tested.format_float(value)) == value

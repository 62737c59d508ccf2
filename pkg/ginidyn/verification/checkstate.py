from enum import IntEnum


class CheckState(IntEnum):
    """Outcome of a single inequality evaluation.

    As reports are serialized into JSON files, states are stored by name.

    :var int PASS: slack >= -SLACK_TOL (or |lhs - rhs| <= SLACK_TOL for an
        identity).
    :var int FAIL: the inequality is violated beyond rounding.
    :var int SKIPPED: the inequality does not apply to this mean (integer
        only, non-integer only, mu in (0, 1) only).
    """

    PASS = 0
    FAIL = 1
    SKIPPED = 2

    def __str__(self) -> str:
        """
        Stringify to return the label.

        :return: the enum name
        """
        return self.name

    def __repr__(self) -> str:
        """
        Repr of CheckState.

        :return: a string of a tuple mapping the enum.
        """
        return f"({self.name}, {self.value})"

"""Helpers shared by the test modules."""

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def zb(*ids):
    """1-based ids, as used in output and comments, to 0-based point ids."""
    return [i - 1 for i in ids]


def ob(seq):
    """0-based ids to a sorted 1-based list."""
    return sorted(x + 1 for x in seq)

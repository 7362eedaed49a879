"""
Built-in toy datasets.

Datasets I, II and III agree in every first- and second-order count but
differ in their triples. Dataset IV is a hollow tetrahedron on four
variables; dataset V is dataset IV without its first observation.
"""

from enum import Enum
from typing import Dict, List

from ..core.models import BinaryMatrix


class FixtureName(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"


FIVE_LABELS = ["V", "W", "X", "Y", "Z"]
FOUR_LABELS = ["V", "W", "X", "Z"]

# columns V W X Y Z
_TABLE_ONE: Dict[str, List[str]] = {
    "I": [
        "00000", "00011", "00101", "00110", "00000", "00011",
        "00101", "00110", "10001", "01100", "11000",
    ],
    "II": [
        "00000", "00001", "00010", "00100", "00011", "00101",
        "00110", "00111", "10001", "01100", "11000",
    ],
    "III": [
        "00001", "00010", "00100", "00111", "00001", "00010",
        "00100", "00111", "10001", "01100", "11000",
    ],
}

# columns V W X Z
_TABLE_TWO = ["0111", "1011", "1101", "1110"]


def _rows(codes: List[str]) -> List[List[int]]:
    return [[int(c) for c in code] for code in codes]


def toy_fixture(name: str) -> BinaryMatrix:
    """Return one of the built-in datasets I-V.

    Raises:
        ValueError: If the name is not a known fixture.
    """
    key = FixtureName(str(name).upper()).value
    if key in _TABLE_ONE:
        return BinaryMatrix.from_rows(_rows(_TABLE_ONE[key]), FIVE_LABELS)
    rows = _rows(_TABLE_TWO)
    if key == "V":
        rows = rows[1:]
    return BinaryMatrix.from_rows(rows, FOUR_LABELS)


def list_fixtures() -> List[str]:
    return [f.value for f in FixtureName]

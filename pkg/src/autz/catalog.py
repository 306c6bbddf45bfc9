"""The tabulated minimal monodromies and the values computed for them.

Entries use intrinsic coordinates: ``e`` is the rotation generator, ``t`` and
``s`` translations (``c = t*s`` is the translation fixed by ``e`` in the
order-16 group). ``expected_torsion`` is ``None`` where no torsion value was
recorded.
"""

from dataclasses import dataclass
from typing import Optional

from .monodromy import MonodromyDatum, datum_from_strings, preset_branch


@dataclass(frozen=True)
class CatalogEntry:
    list_id: int
    group: str
    name: str
    h: int
    ab: tuple
    gammas: tuple
    expected_count: int
    expected_torsion: Optional[tuple]
    expected_autz_order: int
    expected_certainty: str

    @property
    def label(self):
        return f"{self.group} {self.name}"

    @property
    def tag(self):
        return self.name.split()[0]

    def datum(self) -> MonodromyDatum:
        return datum_from_strings(self.group, self.h, self.ab, self.gammas)

    def branch(self):
        return preset_branch(self.group)


def _e(list_id, group, name, h, ab, gammas, count, torsion=None, autz=1, certainty="Exact"):
    return CatalogEntry(list_id, group, name, h, tuple(ab), tuple(gammas), count,
                        None if torsion is None else tuple(torsion), autz, certainty)


LIST_I = (
    _e(1, "Z3xMu3", "I-1", 1, ["e", "1"], ["t", "t^2"], 1),
    _e(1, "Z3xMu3", "I-2", 2, ["e", "t", "1", "1"], [], 9, [], 3),
    _e(1, "Z3xMu3", "II-2", 2, ["e", "1", "t", "1"], [], 1),
    _e(1, "Z3xMu3", "II-3 v1", 2, ["e", "t", "t", "1"], [], 9, [], 3),
    _e(1, "Z3xMu3", "II-3 v2", 2, ["e", "t", "t^2", "1"], [], 9, [], 3),
    _e(1, "Z2xMu4", "I-1", 1, ["e", "1"], ["t", "t"], 2, [2, 2], 2),
    _e(1, "Z2xMu4", "I-2", 2, ["e", "t", "1", "1"], [], 8, [], 2),
    _e(1, "Z2xMu4", "II-2", 2, ["e", "1", "t", "1"], [], 2, [2]),
    _e(1, "Z2xMu4", "II-3", 2, ["e", "t", "t", "1"], [], 8, [], 2),
    _e(1, "Z22xMu2", "I-1", 1, ["e", "1"], ["t", "s", "t*s"], 1),
    _e(1, "Z22xMu2", "I-3", 1, ["e", "t"], ["s", "s"], 1),
    _e(1, "Z22xMu2", "II v1", 2, ["e", "t", "s", "1"], [], 1),
    _e(1, "Z22xMu2", "II v2", 2, ["e", "t", "s", "t"], [], 1),
    _e(1, "Z22xMu2", "II-1", 2, ["e", "1", "t", "s"], [], 1),
    _e(1, "Z22xMu2", "III v1", 2, ["e", "t", "t", "1"], ["s", "s"], 1),
    _e(1, "Z22xMu2", "III v2", 2, ["e", "1", "t", "1"], ["s", "s"], 1),
    _e(1, "Z2xMu2", "I-1", 1, ["e", "1"], ["t", "t"], 1),
    _e(1, "Z2xMu2", "I-2", 2, ["e", "t", "1", "1"], [], 4, [2], 2, "UpperBound"),
    _e(1, "Z2xMu2", "II-2", 2, ["e", "1", "t", "1"], [], 1),
    _e(1, "Z2xMu2", "II-3", 2, ["e", "t", "t", "1"], [], 4, [2], 2, "UpperBound"),
)

LIST_II = (
    _e(2, "Sporadic16", "IV-2", 1, ["e", "1"], ["s", "s"], 1),
    _e(2, "Sporadic16", "V-1", 1, ["e", "t"], ["c"], 1),
    _e(2, "Sporadic16", "V*-2", 2, ["e", "1", "1", "t"], ["s", "s"], 1),
    _e(2, "Sporadic16", "V**-2", 2, ["e", "1", "1", "t"], ["c", "c"], 1),
    _e(2, "Sporadic16", "V***-1", 2, ["e", "t", "1", "t"], ["c"], 1),
    _e(2, "Sporadic16", "VI", 2, ["e", "1", "t", "s"], [], 1),
    _e(2, "Sporadic16", "VI*", 2, ["e", "c", "t", "1"], [], 2, []),
    _e(2, "Sporadic16", "VI**", 2, ["e", "c", "t", "s"], [], 2, []),
    _e(2, "Sporadic16", "VIII", 2, ["e", "1", "t", "1"], [], 1),
    _e(2, "Sporadic16", "VII", 3, ["e", "1", "c", "1", "s", "1"], [], 1),
    _e(2, "Sporadic16", "VII*", 3, ["e", "1", "t", "1", "s", "1"], [], 1),
)


def catalog_list1():
    return LIST_I


def catalog_list2():
    return LIST_II


def catalog(list_id):
    if list_id in (1, "1", "a1"):
        return LIST_I
    if list_id in (2, "2", "a2"):
        return LIST_II
    raise ValueError(f"unknown list {list_id!r}; use 1 or 2")

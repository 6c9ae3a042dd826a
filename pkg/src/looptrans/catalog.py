"""Built-in catalog of reference graph pairs and group data.

Every entry is exact embedded data: the seven-vertex pair with its 7x7
transplantation witness, the two-vertex square/triangle pair with the
witness satisfying T^2 = 2I, the fifteen-vertex all-Neumann pair, and the
dihedral group data underlying the two-vertex pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import RatMatrix, SignedPerm
from .graph import LoopSignedGraph


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graphs: tuple[LoopSignedGraph, ...]
    witness: RatMatrix | None = None
    group_data: "GroupData | None" = None


@dataclass(frozen=True)
class GroupData:
    """Involutive generators plus two subgroup/character pairs given by words.

    Words are colour sequences c1..cl; the word w maps to the matrix product
    A^{cl} ... A^{c1} of the generators.  Characters list one +-1 value per
    subgroup word.
    """

    generators: tuple[SignedPerm, ...]
    subgroup_words: tuple[tuple[int, ...], ...]
    character: tuple[int, ...]
    hat_subgroup_words: tuple[tuple[int, ...], ...]
    hat_character: tuple[int, ...]


def _gww_pair() -> tuple[LoopSignedGraph, LoopSignedGraph]:
    straight = ([(1, 2), (4, 5)], {3: "D", 6: "N", 7: "D"})
    zigzag = ([(3, 4), (5, 7)], {1: "D", 2: "N", 6: "D"})
    wavy = ([(2, 3), (5, 6)], {1: "N", 4: "D", 7: "N"})
    first = LoopSignedGraph.build(7, [straight, zigzag, wavy])
    second = LoopSignedGraph.build(7, [zigzag, straight, wavy])
    return first, second


_GWW_WITNESS_ROWS = [
    [-1, 1, 1, 0, 0, 0, 1],
    [1, 1, 0, 1, 1, 0, 0],
    [1, 0, 1, -1, 0, 1, 0],
    [0, 1, -1, 0, -1, 1, 0],
    [0, 1, 0, -1, 0, -1, -1],
    [0, 0, 1, 1, -1, 0, -1],
    [1, 0, 0, 0, -1, -1, 1],
]


def _square_triangle_pair() -> tuple[LoopSignedGraph, LoopSignedGraph]:
    square = LoopSignedGraph.build(2, [([], {1: "D", 2: "N"}), ([(1, 2)], {})])
    triangle = LoopSignedGraph.build(2, [([(1, 2)], {}), ([], {1: "D", 2: "N"})])
    return square, triangle


def _band15_pair() -> tuple[LoopSignedGraph, LoopSignedGraph]:
    def graph(per_colour_edges):
        colors = []
        for edges in per_colour_edges:
            covered = {v for e in edges for v in e}
            loops = {v: "N" for v in range(1, 16) if v not in covered}
            colors.append((edges, loops))
        return LoopSignedGraph.build(15, colors)

    first = graph(
        [
            [(1, 8), (3, 10), (5, 12), (7, 14)],
            [(1, 2), (4, 7), (8, 14), (9, 12), (10, 15), (11, 13)],
            [(1, 6), (2, 12), (3, 10), (4, 13), (5, 11), (8, 15)],
        ]
    )
    second = graph(
        [
            [(1, 8), (3, 10), (5, 12), (7, 14)],
            [(1, 6), (2, 13), (3, 11), (4, 12), (5, 10), (9, 14)],
            [(1, 12), (2, 9), (3, 5), (4, 15), (7, 10), (8, 14)],
        ]
    )
    return first, second


def _d4_group_data() -> GroupData:
    reflection = SignedPerm((1, 2), (-1, 1))
    swap = SignedPerm((2, 1), (1, 1))
    return GroupData(
        generators=(reflection, swap),
        # e, the colour-1 reflection, its product with the half turn, the half turn
        subgroup_words=((), (1,), (2, 1, 2, 1, 1), (2, 1, 2, 1)),
        character=(1, -1, 1, -1),
        hat_subgroup_words=((), (2, 1, 2, 1, 2), (2,), (2, 1, 2, 1)),
        hat_character=(1, 1, -1, -1),
    )


def catalog(name: str) -> CatalogEntry:
    """Look up an embedded fixture by name.

    Known names: ``gww``, ``square-triangle``, ``band15``, ``d4-group``.
    """
    if name == "gww":
        return CatalogEntry("gww", _gww_pair(), RatMatrix.from_rows(_GWW_WITNESS_ROWS))
    if name == "square-triangle":
        return CatalogEntry(
            "square-triangle",
            _square_triangle_pair(),
            RatMatrix.from_rows([[-1, 1], [1, 1]]),
        )
    if name == "band15":
        return CatalogEntry("band15", _band15_pair())
    if name == "d4-group":
        data = _d4_group_data()
        return CatalogEntry("d4-group", _square_triangle_pair(), None, data)
    raise KeyError(f"unknown catalog entry {name!r}")


CATALOG_NAMES = ("gww", "square-triangle", "band15", "d4-group")

"""
Turanflag Catalog - Named 3-graphs, forbidden families and Lagrangian witnesses

Graph names are used by the CLI as ``@name``; family names likewise.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import FieldElement
from .family import Family
from .hypergraph import ThreeGraph, parse_graph

# ============================================================================
# Graphs
# ============================================================================

GRAPHS: Dict[str, str] = {
    "edge": "3:123",
    "k4": "4:123,124,134,234",
    "k4-": "4:123,124,134",
    "e1": "4:123",
    "f5": "5:123,124,345",
    "f32": "5:123,145,245,345",
    # expansion of the complete graph K4: each pair of 1..4 gets its own third vertex
    "k4-expansion": "10:125,136,147,238,249,34a",
    "h29": "6:123,124,345,156",
    "h29-1": "4:123,124,134",
    "h29-2": "5:123,124,125,345",
    "h29-3": "5:123,124,135,245",
    "g49-1": "6:123,124,134,235,245,156",
    "g49-2": "6:123,124,135,345,146,256",
    "g59-1": "6:123,124,134,125,245,136,346,156",
    "g59-2": "6:123,124,134,125,135,245,345,236,456",
    "g59-3": "6:123,124,134,125,135,245,126,236,146",
    "g59-4": "6:123,124,134,125,135,345,126,236,246",
    "g59-5": "6:123,124,134,125,235,345,126,246,156",
    "g59-6": "6:123,124,134,125,235,136,346,156,356",
    "g59-7": "6:123,124,134,125,135,245,126,136,346,456",
    "g59-8": "6:123,124,134,125,135,345,126,236,146,156",
    "g59-9": "6:123,124,134,125,135,245,126,236,346,356",
    "g59-10": "6:123,124,134,125,135,345,126,236,346,356",
    "g59-11": "6:123,124,134,125,135,146,246,156,256,456",
    "g59-12": "6:123,124,134,125,135,146,246,156,356,456",
    "fano": "7:123,145,356,167,257,347,246",
    "g34-1": "6:123,124,134,234,125,135,235,145,126,136,236,146,256,356",
    "g34-2": "6:123,124,134,234,125,135,235,145,245,126,136,236,146,356,456",
    "g34-3": "6:123,124,134,234,125,135,235,145,245,126,136,146,346,256,356,456",
    "k4h-1": "6:123,124,134,125,135,245,345,126,236,146,156,456",
    "k4h-2": "6:123,124,134,125,135,126,236,146,346,356,456",
    "k4h-3": "6:123,124,134,125,135,245,345,126,236,346,356",
    "k4h-4": "6:123,124,134,125,135,245,236,146,346,156,456",
    "k4h-5": "6:123,124,134,125,135,245,345,236,146,256,456",
    "k4h-6": "6:123,124,134,125,135,245,345,126,136,246,346,456",
    "k4h-7": "6:123,124,134,125,345,136,246,256,356,456",
    "k4h-8": "6:123,124,134,125,135,236,146,246,156,256,456",
    "k4h-9": "6:123,124,134,125,135,245,236,346,356,456",
    "k4h-10": "6:123,124,134,125,135,245,236,246,346,456",
    "c5": "5:123,234,345,145,125",
    "f14": "5:123,124,125,134,135,145",
    "k6-c6": "6:123,124,125,126,134,135,146,235,246,256,345,346,356,456",
    "k5-2e": "5:123,124,134,234,135,235,145,245",
    "k5-e": "5:123,124,134,234,125,135,235,145,245",
    "f32-star": "5:123,124,125,345",
}

# ============================================================================
# Families
# ============================================================================

FAMILIES: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "k4": (("k4",), ()),
    "k4+h1": (("k4", "k4h-1"), ()),
    "k4/induced-e1": (("k4",), ("e1",)),
    "f5": (("f5",), ()),
    "h29": (("h29",), ()),
    "h29-aug": (("h29", "h29-1", "h29-2", "h29-3"), ()),
    "f32": (("f32",), ()),
    "g49-1": (("g49-1",), ()),
    "g49-2": (("g49-2",), ()),
    "fano": (("fano",), ()),
}
FAMILIES.update({f"g59-{i}": ((f"g59-{i}",), ()) for i in range(1, 13)})
FAMILIES.update({f"g34-{i}": ((f"g34-{i}",), ()) for i in range(1, 4)})

_LAGRANGIAN_FAMILIES: Dict[int, Tuple[str, ...]] = {
    1: ("6:123,124,135,146,156", "7:123,124,156,346,257", "7:123,124,156,347,567"),
    2: ("4:123,124,134", "5:123,124,125,345", "7:123,124,135,256,167,467"),
    3: ("4:123,124,134,234", "6:123,124,125,345,346", "6:123,124,345,156,256",
        "6:123,124,125,346,356,456"),
    4: ("6:123,124,134,156,256", "7:123,124,134,125,126,357,367,457,467,567",
        "7:123,124,345,156,257"),
    5: ("6:123,124,135,145,346,256", "6:123,124,134,125,345,136,246",
        "6:123,124,134,125,135,126,136,456"),
    6: ("6:123,124,125,346,356,456", "6:123,124,135,256,346,456",
        "6:123,124,135,145,256,346", "6:123,124,134,125,126,356,456",
        "6:123,124,134,125,135,126,136,456", "6:123,124,134,125,135,245,146,246,256",
        "6:123,124,134,125,135,345,126,146,346", "6:123,124,134,125,135,235,245,146,246"),
    7: ("6:123,124,135,345,146,256,346", "6:123,124,134,125,135,126,136,456",
        "6:123,124,134,125,136,256,356,456", "6:123,124,134,125,135,145,126,136,146,156",
        "6:123,124,134,234,125,135,245,236,146,346"),
}

# ============================================================================
# Lagrangian witnesses
# ============================================================================

_S5 = FieldElement(0, 1, 5)
_S13 = FieldElement(0, 1, 13)


def _q(p: int, q: int = 1) -> FieldElement:
    return FieldElement(Fraction(p, q))


@dataclass(frozen=True)
class LagrangianEntry:
    """A graph whose Lagrangian equals the Turan density of a finite family"""

    index: int
    graph: str
    value: FieldElement
    weights: Tuple[FieldElement, ...]


LAGRANGIANS: Tuple[LagrangianEntry, ...] = (
    LagrangianEntry(
        1, "f32-star",
        (189 + 15 * _S5) / 961,
        ((13 + 3 * _S5) / 62,) * 2 + ((6 - _S5) / 31,) * 3,
    ),
    LagrangianEntry(2, "c5", _q(6, 25), (_q(1, 5),) * 5),
    LagrangianEntry(3, "k4-", _q(8, 27), (_q(1, 3),) + (_q(2, 9),) * 3),
    LagrangianEntry(4, "f14", _q(1, 3), (_q(1, 3),) + (_q(1, 6),) * 4),
    LagrangianEntry(5, "k6-c6", _q(7, 18), (_q(1, 6),) * 6),
    LagrangianEntry(6, "k5-2e", _q(32, 81), (_q(2, 9),) * 4 + (_q(1, 9),)),
    LagrangianEntry(
        7, "k5-e",
        (-35 + 13 * _S13) / 27,
        ((5 - _S13) / 6,) * 2 + ((-2 + _S13) / 9,) * 3,
    ),
)


# ============================================================================
# Lookup
# ============================================================================

def graph(name: str) -> ThreeGraph:
    """Named graph, e.g. ``graph("k4-")``"""
    try:
        return parse_graph(GRAPHS[name])
    except KeyError:
        raise KeyError(f"unknown graph {name!r}") from None


def family(name: str) -> Family:
    """Named family, including ``lagrangian-1`` .. ``lagrangian-7``"""
    if name.startswith("lagrangian-") and name[11:].isdigit() and int(name[11:]) in _LAGRANGIAN_FAMILIES:
        return Family.of(parse_graph(text) for text in _LAGRANGIAN_FAMILIES[int(name[11:])])
    try:
        members, induced = FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}") from None
    return Family.of([graph(m) for m in members], [graph(m) for m in induced])


def family_names() -> List[str]:
    return sorted(FAMILIES) + [f"lagrangian-{i}" for i in sorted(_LAGRANGIAN_FAMILIES)]


def graph_names() -> List[str]:
    return sorted(GRAPHS)

"""Compile a tiling instance into a pattern pair whose subsumption status
tracks tileability, build the non-subsumption witness from a periodic
tiling, and verify the witness by direct evaluation.

The emitted pair (written as P.sp / Pprime.sp by the CLI) asks whether the
small basic pattern is subsumed by the left-deep OPT chain. On the witness
graph of a valid periodic tiling the chain's conflict probes never match,
every structural match extends through a tile-step leaf that rebinds the
marker variable ?b to the refuting constant, and the final marker leaf can
no longer restore it, so subsumption fails with witness {?b -> bSub}.

Conventions: hNext advances the horizontal coordinate (wrapping at the
horizontal period p), vNext the vertical one (wrapping at q), and inInitRow
marks the bottom row. Base-marker triples use the bType predicate
throughout; tType is reserved for tile types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Graph, Iri, Mapping, Triple, Var, subsumed_mapping
from .evaluation import evaluate
from .pattern import BasicPattern, Leaf, Opt, Pattern, TriplePattern
from .tiling import PeriodicTiling, TilingInstance, replicate_to, verify_periodic

H_TYPE = Iri("hType")
IN_INIT_ROW = Iri("inInitRow")
C_TYPE = Iri("cType")
CELL = Iri("Cell")
H_NEXT = Iri("hNext")
V_NEXT = Iri("vNext")
B_TYPE = Iri("bType")
T_TYPE = Iri("tType")
BASE_SUB = Iri("BaseSub")
BASE_NOT_SUB = Iri("BaseNotSub")
B_SUB = Iri("bSub")
B_NOT_SUB = Iri("bNotSub")
C11 = Iri("c11")
C12 = Iri("c12")
C21 = Iri("c21")
C22 = Iri("c22")

VAR_R = Var("r")
VAR_C = Var("c")
VAR_S1 = Var("s1")
VAR_S2 = Var("s2")
VAR_S3 = Var("s3")
VAR_S4 = Var("s4")
VAR_B = Var("b")
VAR_TILE1 = Var("tile1")
VAR_TILE2 = Var("tile2")
VAR_R_NEXT = Var("r_next")  # init-row successor of ?r
VAR_C_NEXT = Var("c_next")  # cell above ?c

RESERVED_NAMES = frozenset(
    iri.name
    for iri in (
        H_TYPE, IN_INIT_ROW, C_TYPE, CELL, H_NEXT, V_NEXT, B_TYPE, T_TYPE,
        BASE_SUB, BASE_NOT_SUB, B_SUB, B_NOT_SUB, C11, C12, C21, C22,
    )
)

_CELL_NAME_RE = re.compile(r"c_\d+_\d+\Z")


@dataclass(frozen=True)
class WitnessPair:
    """A graph and a mapping demonstrating a non-subsumption."""

    graph: Graph
    mapping: Mapping


def tile_iri_map(inst: TilingInstance) -> dict[str, Iri]:
    """IRIs for the instance's tiles, in tile-list order.

    Tile names that collide with the construction's reserved vocabulary or
    with dynamically generated cell names are prefixed with `tile_` until
    unique; the map records every tile, renamed or not.
    """
    used = set(RESERVED_NAMES)
    out: dict[str, Iri] = {}
    for tile in inst.tiles:
        name = tile
        while name in used or _CELL_NAME_RE.match(name):
            name = "tile_" + name
        out[tile] = Iri(name)
        used.add(name)
    return out


def build_p(inst: TilingInstance) -> Pattern:
    """The small side of the pair: six triples, one variable.

    Five ground triples require the seed 2x2 grid block around c11; the
    sixth binds the marker ?b to anything bType-tagged BaseSub. The result
    does not depend on the instance's content.
    """
    del inst
    return Leaf(
        BasicPattern(
            [
                TriplePattern(C11, H_TYPE, IN_INIT_ROW),
                TriplePattern(C11, C_TYPE, CELL),
                TriplePattern(C11, H_NEXT, C12),
                TriplePattern(C11, V_NEXT, C21),
                TriplePattern(C12, V_NEXT, C22),
                TriplePattern(VAR_B, B_TYPE, BASE_SUB),
            ]
        )
    )


def _root_leaf() -> BasicPattern:
    # Structural probe: an init-row cell, a typed cell, and a 2x2 step block.
    return BasicPattern(
        [
            TriplePattern(VAR_R, H_TYPE, IN_INIT_ROW),
            TriplePattern(VAR_C, C_TYPE, CELL),
            TriplePattern(VAR_S1, H_NEXT, VAR_S2),
            TriplePattern(VAR_S1, V_NEXT, VAR_S3),
            TriplePattern(VAR_S2, V_NEXT, VAR_S4),
        ]
    )


def _conflict_leaf(step: Iri, first: Iri, second: Iri) -> BasicPattern:
    # Matches iff two step-adjacent cells carry an incompatible type pair.
    return BasicPattern(
        [
            TriplePattern(VAR_B, B_TYPE, BASE_SUB),
            TriplePattern(VAR_TILE1, step, VAR_TILE2),
            TriplePattern(VAR_TILE1, T_TYPE, first),
            TriplePattern(VAR_TILE2, T_TYPE, second),
        ]
    )


def _tile_step_leaf(tile: Iri) -> BasicPattern:
    # Extends any structural match whose ?c carries this tile type, rebinding
    # the marker to the refuting constant and probing grid confluence.
    return BasicPattern(
        [
            TriplePattern(VAR_B, B_TYPE, BASE_NOT_SUB),
            TriplePattern(VAR_R, C_TYPE, CELL),
            TriplePattern(VAR_R, H_NEXT, VAR_R_NEXT),
            TriplePattern(VAR_R_NEXT, H_TYPE, IN_INIT_ROW),
            TriplePattern(VAR_C, T_TYPE, tile),
            TriplePattern(VAR_C, V_NEXT, VAR_C_NEXT),
            TriplePattern(VAR_C_NEXT, C_TYPE, CELL),
            TriplePattern(VAR_S3, H_NEXT, VAR_S4),
        ]
    )


def _marker_leaf() -> BasicPattern:
    return BasicPattern([TriplePattern(VAR_B, B_TYPE, BASE_SUB)])


def build_p_prime(inst: TilingInstance) -> Pattern:
    """The chain side of the pair, a left-deep OPT chain.

    Leaf order: the structural probe, one conflict probe per horizontally
    incompatible tile pair, one per vertically incompatible pair, one
    tile-step leaf per tile, and the marker leaf. The chain is weakly
    well-designed but not well-designed: ?b enters through an OPT right
    argument and recurs in every later leaf.
    """
    tiles = tile_iri_map(inst)
    leaves: list[BasicPattern] = [_root_leaf()]
    leaves.extend(
        _conflict_leaf(H_NEXT, tiles[a], tiles[b]) for a, b in inst.h_incompatible()
    )
    leaves.extend(
        _conflict_leaf(V_NEXT, tiles[a], tiles[b]) for a, b in inst.v_incompatible()
    )
    leaves.extend(_tile_step_leaf(tiles[t]) for t in inst.tiles)
    leaves.append(_marker_leaf())
    chain: Pattern = Leaf(leaves[0])
    for basic in leaves[1:]:
        chain = Opt(chain, Leaf(basic))
    return chain


def _cell_iri(x: int, y: int) -> Iri:
    # The four seed cells reuse the constants of build_p, so its ground
    # triples are guaranteed to be present in every witness graph.
    aliases = {(1, 1): C11, (2, 1): C12, (1, 2): C21, (2, 2): C22}
    return aliases.get((x, y), Iri(f"c_{x}_{y}"))


def build_witness(inst: TilingInstance, pt: PeriodicTiling) -> WitnessPair:
    """Encode a verified periodic tiling as a graph, with mapping {?b -> bSub}.

    Periods are replicated up to at least 2x2 first, so the seed block of
    build_p exists. Raises ValueError if the tiling does not verify.
    """
    if not verify_periodic(inst, pt):
        raise ValueError("periodic tiling does not verify against the instance")
    pt = replicate_to(pt, 2, 2)
    tiles = tile_iri_map(inst)

    triples: list[Triple] = [
        Triple(B_SUB, B_TYPE, BASE_SUB),
        Triple(B_NOT_SUB, B_TYPE, BASE_NOT_SUB),
    ]
    for x in range(1, pt.p + 1):
        triples.append(Triple(_cell_iri(x, 1), H_TYPE, IN_INIT_ROW))
    for y in range(1, pt.q + 1):
        for x in range(1, pt.p + 1):
            cell = _cell_iri(x, y)
            triples.append(Triple(cell, C_TYPE, CELL))
            triples.append(Triple(cell, T_TYPE, tiles[pt.tile(x - 1, y - 1)]))
            triples.append(Triple(cell, H_NEXT, _cell_iri(x % pt.p + 1, y)))
            triples.append(Triple(cell, V_NEXT, _cell_iri(x, y % pt.q + 1)))
    return WitnessPair(Graph(triples), Mapping({VAR_B: B_SUB}))


def verify_witness(p: Pattern, p2: Pattern, w: WitnessPair) -> bool:
    """True iff w.mapping is a solution of p on w.graph and no solution of
    p2 on w.graph extends it."""
    if w.mapping not in evaluate(p, w.graph):
        return False
    return not any(
        subsumed_mapping(w.mapping, other) for other in evaluate(p2, w.graph).mappings
    )

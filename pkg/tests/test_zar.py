"""Box-free thresholds against an exhaustive reference.

The reference enumerates every edge set over the full cell grid, so it is
only run at sizes where 2**(m**n) stays tiny; the frozen constants below
were produced by that same enumeration and cross-checked against the
published small values.
"""

import pytest

from instance_gen import ref_has_box, ref_zar
from vcn import (
    BudgetExceededError,
    InputError,
    PartiteHypergraph,
    contains_complete_partite,
    erdos_bound,
    build_counterexample_structure,
    build_extremal_family,
    shatter_fn,
    vc_n_dim,
    z22_lower_bound,
    zarankiewicz,
)

# (n, m, d) -> threshold, from the exhaustive reference
FROZEN = {
    (2, 2, 2): 4,
    (2, 3, 2): 7,
    (2, 3, 3): 9,
    (3, 2, 2): 8,
    (1, 4, 2): 2,
    (1, 4, 3): 3,
}


def test_reference_agrees_with_frozen_values():
    for (n, m, d), want in FROZEN.items():
        assert ref_zar(n, m, d) == want


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_zarankiewicz_matches_reference(key):
    n, m, d = key
    res = zarankiewicz(n, m, d)
    assert res.status == "exact"
    assert res.z == FROZEN[key]


@pytest.mark.parametrize(
    "n,m,d,want",
    [
        (2, 4, 2, 10),  # classical 4x4 value
        (2, 5, 2, 13),  # classical 5x5 value
        (2, 4, 3, 14),
        (2, 5, 3, 21),
        (2, 4, 4, 16),  # only the full grid contains the full box
    ],
)
def test_published_bipartite_values(n, m, d, want):
    res = zarankiewicz(n, m, d)
    assert res.status == "exact"
    assert res.z == want


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("d", range(1, 5))
def test_single_part_closed_form(m, d):
    res = zarankiewicz(1, m, d)
    assert res.status == "exact"
    assert res.z == min(m, d - 1) + 1
    if m >= d:
        assert res.z == d


def test_witness_is_extremal_and_box_free():
    for (n, m, d), want in FROZEN.items():
        res = zarankiewicz(n, m, d)
        h = res.extremal_witness
        assert isinstance(h, PartiteHypergraph)
        assert len(h.edges) == res.extremal_edge_count == want - 1
        assert not contains_complete_partite(h, d)
        assert not ref_has_box(set(h.edges), n, m, d)


def test_budget_exhaustion_reports_lower_bound():
    res = zarankiewicz(2, 4, 2, node_budget=3)
    assert res.status == "lower_bound_only"
    assert 1 <= res.z <= 10
    assert not contains_complete_partite(res.extremal_witness, 2)


def test_d_larger_than_part_never_boxes():
    # no d-box fits, so the threshold sits above the full grid
    res = zarankiewicz(2, 2, 3)
    assert res.z == 5
    assert res.extremal_edge_count == 4


def test_input_validation():
    with pytest.raises(InputError):
        zarankiewicz(0, 2, 2)
    with pytest.raises(InputError):
        zarankiewicz(2, 2, 0)
    with pytest.raises(InputError):
        contains_complete_partite(
            PartiteHypergraph(2, (2, 2), frozenset()), 0
        )


def test_contains_complete_partite_direct():
    grid = PartiteHypergraph(2, (2, 2), frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
    assert contains_complete_partite(grid, 2)
    missing = PartiteHypergraph(2, (2, 2), frozenset({(0, 0), (0, 1), (1, 0)}))
    assert not contains_complete_partite(missing, 2)
    assert contains_complete_partite(missing, 1)
    empty = PartiteHypergraph(2, (2, 2), frozenset())
    assert not contains_complete_partite(empty, 1)


def test_hypergraph_json_round_trip():
    h = zarankiewicz(2, 3, 2).extremal_witness
    assert PartiteHypergraph.from_json(h.to_json()) == h


def test_erdos_bound_shape():
    b = erdos_bound(2, 4, 2)
    assert b.epsilon == 0.5
    assert b.ex_bound == pytest.approx(4**1.5)
    assert b.z_bound == pytest.approx(8**1.5)
    assert not b.degenerate
    assert erdos_bound(1, 4, 2).degenerate
    # the advisory lower bound stays below the bipartite upper bound
    for m in range(2, 12):
        assert z22_lower_bound(m) <= erdos_bound(2, m, 2).ex_bound


def test_extremal_family_small():
    fam = build_extremal_family(2, 1, [2])
    assert len(fam.members) == 8
    assert vc_n_dim(fam) == 1
    assert shatter_fn(fam, 2) == 8
    z = zarankiewicz(2, 2, 2).z
    assert shatter_fn(fam, 2) >= 1 << (z - 1)


def test_extremal_family_two_blocks():
    fam = build_extremal_family(2, 1, [2, 2])
    assert fam.universe.part_sizes == (4, 4)
    assert vc_n_dim(fam) == 1
    # each block still shatters at full strength
    assert shatter_fn(fam, 2) >= 8


def test_extremal_family_validation():
    with pytest.raises(InputError):
        build_extremal_family(2, 2, [1])  # m below d
    with pytest.raises(InputError):
        build_extremal_family(2, 1, [])
    with pytest.raises(BudgetExceededError):
        build_extremal_family(2, 2, [4], node_budget=2)


def test_counterexample_structure_shape():
    s = build_counterexample_structure([2])
    assert s.domain_size == 10  # 8 members plus 2 shared ground elements
    rel = s.relations["R"]
    assert rel.arity == 3
    # member 0 is the empty set: no triples start with 0
    assert all(t[0] != 0 for t in rel.tuples)

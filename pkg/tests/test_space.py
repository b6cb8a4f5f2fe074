"""SearchSpace tests: build, bounds, neighbors, sampling, lookup, export."""

import random

import pytest

from tunespace.errors import SpaceError, UnknownParameterError
from tunespace.solver import Problem, compile_problem, solve_all
from tunespace.space import build_search_space, import_space
from tunespace.synthetic import characterize


def max_product_space():
    return build_search_space(compile_problem({"x": [1, 2, 4], "y": [1, 2, 4]},
                                              ["x*y <= 4"]))


# ---------------------------------------------------------------------------
# Build


def test_build_max_product_space():
    space = max_product_space()
    assert space.valid_count == 6
    assert space.cartesian_size == 9
    assert set(space.configurations) == {
        (1, 1), (1, 2), (1, 4), (2, 1), (2, 2), (4, 1)
    }


def test_build_unconstrained():
    space = build_search_space(Problem({"x": [1, 2], "y": [1, 2]}))
    assert space.valid_count == 4
    assert space.cartesian_size == 4


def test_build_unsatisfiable():
    space = build_search_space(compile_problem({"x": [1, 2]}, ["x > 100"]))
    assert space.valid_count == 0
    assert space.cartesian_size == 2
    assert space.neighbors((1,), "hamming", 1) == []


def test_index_round_trip():
    space = max_product_space()
    for i, config in enumerate(space.configurations):
        assert space.index_of(config) == i


def test_unique_values_cover_only_valid_configurations():
    space = max_product_space()
    assert space.unique_values["x"] == (1, 2, 4)
    space2 = build_search_space(compile_problem(
        {"x": [1, 2, 12], "y": [1, 2]}, ["x*y <= 4"]
    ))
    assert space2.unique_values["x"] == (1, 2)  # 12 never occurs


# ---------------------------------------------------------------------------
# Bounds


def test_bounds_examples():
    space = max_product_space()
    assert space.bounds("x") == (1, 4)   # 4 survives via (4, 1)
    assert space.bounds("y") == (1, 4)


def test_bounds_true_versus_declared():
    space = build_search_space(compile_problem(
        {"x": [1, 2, 12], "y": [1, 2]}, ["x*y <= 10"]
    ))
    assert space.bounds("x") == (1, 2)  # 12 was pruned from every solution


def test_bounds_unconstrained_equals_domain():
    space = build_search_space(Problem({"x": [3, 1, 7]}))
    assert space.bounds("x") == (1, 7)


def test_bounds_errors():
    space = max_product_space()
    with pytest.raises(UnknownParameterError):
        space.bounds("nope")
    empty = build_search_space(compile_problem({"x": [1, 2]}, ["x > 100"]))
    with pytest.raises(SpaceError):
        empty.bounds("x")
    textual = build_search_space(Problem({"mode": ["a", "b"]}))
    with pytest.raises(SpaceError):
        textual.bounds("mode")


# ---------------------------------------------------------------------------
# Neighbors


def test_hamming_neighbors_example():
    space = max_product_space()
    # All 8 Hamming-1 candidates of (2, 2), filtered by x*y <= 4.
    assert space.neighbors((2, 2), "hamming", 1) == [(1, 2), (2, 1)]


def test_hamming_distance_saturates():
    space = max_product_space()
    got = space.neighbors((2, 2), "hamming", 2)
    assert set(got) == set(space.configurations) - {(2, 2)}


def test_hamming_accepts_non_member_configurations():
    space = max_product_space()
    got = space.neighbors((4, 4), "hamming", 1)  # invalid config, well-formed
    assert got == [(1, 4), (4, 1)]


def test_hamming_rejects_malformed():
    space = max_product_space()
    with pytest.raises(SpaceError):
        space.neighbors((2,), "hamming", 1)
    with pytest.raises(SpaceError):
        space.neighbors((2, "a"), "hamming", 1)
    with pytest.raises(SpaceError):
        space.neighbors((2, 3), "hamming", 1)  # 3 not in declared domain
    with pytest.raises(SpaceError):
        space.neighbors((2, 2), "hamming", 0)
    with pytest.raises(SpaceError):
        space.neighbors((2, 2), "sideways", 1)


def test_adjacent_index_neighbors():
    space = build_search_space(Problem({"x": [1, 2, 4, 8], "y": [1, 2, 4, 8]}))
    got = space.neighbors((2, 2), "adjacent-index")
    assert set(got) == {
        (1, 1), (1, 2), (1, 4), (2, 1), (2, 4), (4, 1), (4, 2), (4, 4)
    }
    with pytest.raises(SpaceError):
        space.neighbors((3, 3), "adjacent-index")  # not a member


def test_adjacent_index_subset_of_full_hamming():
    space = max_product_space()
    for config in space.configurations:
        adjacent = set(space.neighbors(config, "adjacent-index"))
        full = set(space.neighbors(config, "hamming", len(space.parameter_names)))
        assert adjacent <= full


def test_neighbor_symmetry():
    rng = random.Random(4)
    space = build_search_space(compile_problem(
        {"a": [1, 2, 3, 4], "b": [1, 2, 3, 4], "c": [1, 2, 3]},
        ["a * b <= 8", "a + c >= 3"],
    ))
    for d in (1, 2, 3):
        for config in space.configurations:
            for other in space.neighbors(config, "hamming", d):
                assert config in space.neighbors(other, "hamming", d)
    _ = rng


def test_neighbors_ordered_by_space_index():
    space = max_product_space()
    neighbors = space.neighbors((2, 2), "hamming", 2)
    indexes = [space.index_of(n) for n in neighbors]
    assert indexes == sorted(indexes)


# ---------------------------------------------------------------------------
# Sampling


def test_sample_all_is_permutation():
    space = max_product_space()
    got = space.sample(space.valid_count, seed=5)
    assert sorted(got) == sorted(space.configurations)


def test_sample_zero_and_over():
    space = max_product_space()
    assert space.sample(0, seed=1) == []
    with pytest.raises(SpaceError):
        space.sample(space.valid_count + 1, seed=1)


def test_sample_deterministic():
    space = max_product_space()
    assert space.sample(3, seed=42) == space.sample(3, seed=42)


def test_sample_distinct():
    space = max_product_space()
    got = space.sample(space.valid_count, seed=9)
    assert len(set(got)) == space.valid_count


def test_sampling_uniformity():
    space = max_product_space()
    counts = {config: 0 for config in space.configurations}
    draws = 10_000
    for seed in range(draws):
        (config,) = space.sample(1, seed=seed)
        counts[config] += 1
    expected = 1 / 6
    for config, count in counts.items():
        frequency = count / draws
        assert abs(frequency - expected) <= 0.05, (config, frequency)


# ---------------------------------------------------------------------------
# index_of


def test_index_of_absent_and_malformed():
    space = max_product_space()
    assert space.index_of((2, 2)) is not None
    assert space.index_of((4, 4)) is None  # violates the constraint
    with pytest.raises(SpaceError):
        space.index_of((2,))
    with pytest.raises(SpaceError):
        space.index_of((2.0, 2))   # real where int expected
    with pytest.raises(SpaceError):
        space.index_of((True, 1))  # bool where int expected


# ---------------------------------------------------------------------------
# Export / import


def test_export_round_trips():
    space = max_product_space()
    for fmt in ("rows", "columns", "maps"):
        payload = space.export(fmt)
        again = import_space(payload)
        assert again == space
        assert again.cartesian_size == space.cartesian_size
        assert list(again.configurations) == list(space.configurations)


def test_export_columns_share_length():
    space = max_product_space()
    payload = space.export("columns")
    lengths = {len(column) for column in payload["columns"].values()}
    assert lengths == {space.valid_count}


def test_export_maps_keys_are_parameter_names():
    space = max_product_space()
    payload = space.export("maps")
    for record in payload["configurations"]:
        assert tuple(record) == space.parameter_names


def test_export_formats_encode_identical_content():
    space = max_product_space()
    imported = [import_space(space.export(fmt)) for fmt in ("rows", "columns", "maps")]
    assert imported[0] == imported[1] == imported[2]


def test_export_unknown_format():
    with pytest.raises(SpaceError):
        max_product_space().export("parquet")


def test_import_preserves_value_tags():
    space = build_search_space(Problem({"x": [1.5, 2.5], "flag": [True, False]}))
    for fmt in ("rows", "columns", "maps"):
        again = import_space(space.export(fmt))
        assert again == space


# ---------------------------------------------------------------------------
# Characterize hookup (space statistics come from the same counts)


def test_characterize_matches_space_metadata():
    problem = compile_problem({"x": [1, 2, 4], "y": [1, 2, 4]}, ["x*y <= 4"])
    stats = characterize(problem, solve_all(problem))
    space = build_search_space(problem)
    assert stats.cartesian_size == space.cartesian_size == 9
    assert stats.valid_count == space.valid_count == 6
    assert stats.sparsity_fraction == pytest.approx(1 / 3)

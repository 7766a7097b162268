"""Adaptive constructions against the shortest-path variants."""
import pytest

from recourse import (
    AdversaryDesyncError,
    FixingShortestPathOrienter,
    GreedyOrienter,
    RecordingDriver,
    RejectedInputError,
    ShortestPathOrienter,
    SpConfig,
    build_tm,
    linear_total_flips,
    pairing_norecourse,
    single_edge_budget,
    single_edge_budget_by_sum,
    single_edge_flips,
    single_step_log_flips,
    tm_edge_count,
    two_flip_forcer,
)

POLICIES = [
    SpConfig(unsaturated_tie="toward_first"),
    SpConfig(unsaturated_tie="toward_second"),
    SpConfig(unsaturated_tie="random", seed=17),
    SpConfig(unsaturated_tie="random", path_tie="random", seed=99),
]


def driver(config=None):
    return ShortestPathOrienter(config or SpConfig())


@pytest.mark.parametrize("config", POLICIES)
@pytest.mark.parametrize("m", [1, 2, 5])
def test_block_sizes_exact_under_all_policies(config, m):
    d = ShortestPathOrienter(config)
    handle = build_tm(d, m)
    assert handle.edges_used == tm_edge_count(m) == 5 * 2 ** (m - 1) - 2
    assert d.state.is_saturated(handle.root)
    assert d.state.nearest_unsaturated(handle.root).length == m


def test_block_edge_counts():
    assert tm_edge_count(1) == 3
    assert tm_edge_count(2) == 8
    assert tm_edge_count(5) == 78
    with pytest.raises(RejectedInputError):
        tm_edge_count(0)


def test_block_requires_constraint_two():
    with pytest.raises(RejectedInputError):
        build_tm(ShortestPathOrienter(SpConfig(constraint_c=3)), 1)


@pytest.mark.parametrize("m,edges,flips", [(2, 7, 1), (4, 17, 2), (64, 317, 6)])
def test_single_step_forcing(m, edges, flips):
    for config in POLICIES:
        result = single_step_log_flips(ShortestPathOrienter(config), m)
        assert result.edges_used == edges == 5 * m - 3
        assert result.final.flips == flips


def test_single_step_rejects_non_powers():
    with pytest.raises(RejectedInputError):
        single_step_log_flips(driver(), 3)
    with pytest.raises(RejectedInputError):
        single_step_log_flips(driver(), 1)


@pytest.mark.parametrize("n,k", [(7, 1), (43, 10), (403, 100)])
def test_linear_forcing(n, k):
    result = linear_total_flips(driver(), n)
    assert result.k == k
    assert result.forced_flips >= k
    assert result.edges_used == 4 * k + 3 <= n


def test_linear_rejects_small_budget():
    with pytest.raises(RejectedInputError):
        linear_total_flips(driver(), 6)


def test_single_edge_budget_forms_agree():
    for mode in ("steered", "robust"):
        for k in range(7):
            assert single_edge_budget(k, mode) == single_edge_budget_by_sum(k, mode)
    assert single_edge_budget(1, "steered") == 9
    assert single_edge_budget(2, "steered") == 47
    assert single_edge_budget(1, "robust") == 19


def test_single_edge_identity_case():
    result = single_edge_flips(driver(), 0)
    assert result.edges_used == 1 and result.red_flips == 0


@pytest.mark.parametrize("config", POLICIES)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_single_edge_robust_forces_k_flips_any_policy(config, k):
    result = single_edge_flips(ShortestPathOrienter(config), k, mode="robust")
    assert result.red_flips >= k
    assert result.tie_dodges == ()
    assert result.edges_used == single_edge_budget(k, "robust")


@pytest.mark.parametrize("path_tie", ["first_endpoint", "second_endpoint"])
def test_single_edge_steered_mode_with_deterministic_ties(path_tie):
    config = SpConfig(path_tie=path_tie)
    result = single_edge_flips(ShortestPathOrienter(config), 3, mode="steered")
    assert result.red_flips >= 3
    assert result.tie_dodges == ()
    assert result.edges_used == single_edge_budget(3, "steered")


def test_single_edge_steered_mode_records_dodges_under_adverse_ties():
    # A callback that always flips the opposite side of whatever the
    # adversary put first dodges the steered-mode tie; the run records the
    # dodge instead of failing, and the budget still holds.
    config = SpConfig(path_tie=lambda u, v: v)
    result = single_edge_flips(ShortestPathOrienter(config), 2, mode="steered")
    assert result.edges_used == single_edge_budget(2, "steered")
    assert len(result.tie_dodges) >= 1


def test_every_emission_is_acyclic():
    recorder = RecordingDriver(driver())
    single_edge_flips(recorder, 2, mode="robust")
    replay = ShortestPathOrienter(SpConfig())
    replay.run_sequence(recorder.emitted)    # same_tree check inside


@pytest.mark.parametrize("variant_cls", [ShortestPathOrienter, FixingShortestPathOrienter])
def test_two_flip_forcer_on_both_variants(variant_cls):
    d = variant_cls(SpConfig())
    result = two_flip_forcer(d, 18)
    assert result.final.flips >= 2
    assert result.edges_used == 16 * 18 + 8 + 7 == 303
    assert all(r.max_in_degree <= 2 for r in result.records)


def test_two_flip_rejects_short_chains():
    with pytest.raises(RejectedInputError):
        two_flip_forcer(driver(), 17)


def test_two_flip_longer_chains():
    result = two_flip_forcer(driver(SpConfig(unsaturated_tie="toward_second")), 20)
    assert result.final.flips >= 2
    assert result.edges_used == 16 * 20 + 8 + 7


def test_pairing_sequences():
    assert pairing_norecourse(1) == [(0, 1)]
    assert len(pairing_norecourse(8)) == 8
    assert len(pairing_norecourse(7)) == 7
    with pytest.raises(RejectedInputError):
        pairing_norecourse(0)


@pytest.mark.parametrize("k", range(2, 11))
def test_pairing_drives_greedy_to_ceil_log(k):
    n = 2 ** k - 1
    records = GreedyOrienter().run_sequence(pairing_norecourse(n))
    assert records[-1].max_in_degree == k


@pytest.mark.parametrize("n", [5, 10, 20, 100, 1000])
def test_pairing_floor_case_for_general_sizes(n):
    records = GreedyOrienter().run_sequence(pairing_norecourse(n))
    assert len(records) == n
    assert records[-1].max_in_degree == n.bit_length() - 1   # floor(log2 n)


def test_recorded_run_replays_identically():
    config = SpConfig(unsaturated_tie="toward_second")
    recorder = RecordingDriver(ShortestPathOrienter(config))
    result = single_step_log_flips(recorder, 16)
    replay = ShortestPathOrienter(SpConfig(unsaturated_tie="toward_second"))
    replay_records = replay.run_sequence(recorder.emitted)
    assert list(result.records) == replay_records

import pytest
from hypothesis import given, strategies as st

from aquasim import fuzzy
from aquasim.fuzzy import Label, OXYGEN, PH, TEMPERATURE, defuzzify, evaluate, membership_optimal, rule_strengths


def test_universes_match_species_sets():
    assert (OXYGEN.lo, OXYGEN.hi, OXYGEN.opt_lo, OXYGEN.opt_hi) == (0, 14, 5, 12)
    assert (PH.lo, PH.hi, PH.opt_lo, PH.opt_hi) == (0, 14, 6.5, 8.5)
    assert (TEMPERATURE.lo, TEMPERATURE.hi, TEMPERATURE.opt_lo, TEMPERATURE.opt_hi) == (18, 36, 22, 30)


@pytest.mark.parametrize("u, x, expected", [
    (OXYGEN, 8.5, 1.0),
    (OXYGEN, 5.0, 0.5),
    (OXYGEN, 12.0, 0.5),
    (OXYGEN, 4.3, 0.0),
    (OXYGEN, 5.7, 1.0),
    (TEMPERATURE, 35.0, 0.0),
    (TEMPERATURE, 10.0, 0.0),  # clamped to 18
    (PH, 6.6, 0.75),           # ramp 6.3..6.7
])
def test_membership_values(u, x, expected):
    assert membership_optimal(u, x) == pytest.approx(expected)


def test_override_replaces_bounds():
    assert membership_optimal(OXYGEN, 3.0) == 0.0
    assert membership_optimal(OXYGEN, 3.0, (2.0, 12.0)) == 1.0
    with pytest.raises(fuzzy.FuzzyError):
        membership_optimal(OXYGEN, 3.0, (6.0, 5.0))


def test_zero_width_override_peaks_at_half():
    assert membership_optimal(OXYGEN, 5.0, (5.0, 5.0)) == pytest.approx(0.5)
    assert membership_optimal(OXYGEN, 5.7, (5.0, 5.0)) == 0.0


@given(st.floats(-5, 50, allow_nan=False), st.sampled_from(fuzzy.UNIVERSES))
def test_complement_and_range(x, u):
    mu = membership_optimal(u, x)
    assert 0.0 <= mu <= 1.0
    assert mu + (1.0 - mu) == 1.0


@given(st.floats(-1, 15), st.floats(0, 4), st.floats(0, 4), st.floats(0, 5), st.floats(0, 5))
def test_widening_never_lowers_membership(x, lo, span, dlo, dhi):
    narrow = (5.0 + lo, 5.0 + lo + span)
    wide = (max(0.0, narrow[0] - dlo), min(14.0, narrow[1] + dhi))
    assert membership_optimal(OXYGEN, x, wide) >= membership_optimal(OXYGEN, x, narrow)


def test_rule_strengths_table_rows():
    assert rule_strengths((1, 0), (1, 0), (1, 0)) == [1, 0, 0, 0, 0, 0, 0, 0]
    assert rule_strengths((1, 0), (1, 0), (0, 1)) == [0, 1, 0, 0, 0, 0, 0, 0]
    assert rule_strengths((0, 1), (0, 1), (0, 1)) == [0, 0, 0, 0, 0, 0, 0, 1]
    assert rule_strengths((0.5, 0.5), (0.5, 0.5), (0.5, 0.5)) == [0.5] * 8


def test_defuzzify_anchors():
    assert defuzzify([1, 0, 0, 0, 0, 0, 0, 0]) == fuzzy.ShrimpState(Label.Normal, 1.0)
    bad = defuzzify([0, 0, 0, 0, 1, 0, 0, 0])
    assert bad.crisp == pytest.approx(0.2) and bad.label is Label.Bad
    death = defuzzify([0] * 7 + [1])
    assert death.crisp == 0.0 and death.label is Label.Bad
    with pytest.raises(fuzzy.FuzzyError, match="no rule fired"):
        defuzzify([0] * 8)


def test_all_half_degrees_weighted_average():
    s = defuzzify([0.5] * 8)
    # (1 + 3*0.6 + 3*0.2 + 0) / 8
    assert s.crisp == pytest.approx(3.4 / 8)
    assert s.label is Label.Tolerable


@given(st.lists(st.floats(0, 1), min_size=8, max_size=8).filter(lambda v: sum(v) > 1e-6))
def test_crisp_in_unit_interval(strengths):
    s = defuzzify(strengths)
    assert 0.0 <= s.crisp <= 1.0
    assert s.label is fuzzy.label_for(s.crisp)


def test_label_thresholds_partition():
    assert fuzzy.label_for(0.0) is Label.Bad
    assert fuzzy.label_for(0.3999) is Label.Bad
    assert fuzzy.label_for(0.4) is Label.Tolerable
    assert fuzzy.label_for(0.7999) is Label.Tolerable
    assert fuzzy.label_for(0.8) is Label.Normal


@pytest.mark.parametrize("o2, ph, t, label", [
    (8, 7.5, 26, Label.Normal),
    (8, 7.5, 34, Label.Tolerable),
    (8, 5.0, 26, Label.Tolerable),
    (3, 7.5, 26, Label.Tolerable),
    (3, 5.5, 26, Label.Bad),
    (3, 7.5, 34, Label.Bad),
    (8, 5.0, 34, Label.Bad),
    (3, 5.0, 34, Label.Bad),
])
def test_evaluate_table_rows(o2, ph, t, label):
    assert evaluate(o2, ph, t).label is label


def test_evaluate_is_pure():
    assert evaluate(4.5, 7.0, 28) == evaluate(4.5, 7.0, 28)


def test_tolerance_override_rescues_low_oxygen():
    assert evaluate(3.0, 7.5, 26).label is Label.Tolerable
    assert evaluate(3.0, 7.5, 26, tolerance=[(2.0, 12.0), None, None]).label is Label.Normal

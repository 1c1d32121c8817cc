import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drunktexter.corpus import SyntheticConfig, _burst_profile, generate_synthetic, Label
from drunktexter.corpus import label_drunk_texters
from drunktexter.lexicon import LexiconCategory, LexiconEntry, expand_drunk_lexicon
from drunktexter.temporal import (BOT_THRESHOLD, Peak, PeakProfile, ScoreSeries, TooFewProfiles,
                                  detect_bots, detect_peaks, height_normality_summary,
                                  moving_average, peak_profile, score_series)

from conftest import make_user

DRUNK = LexiconCategory.from_words("drunk", ["drunk", "tipsy"])


def test_score_series_examples():
    heavy = LexiconCategory("drunk", (LexiconEntry("drunk", 3.0),))
    u = make_user("u", ["so drunk drunk", "nothing here", "drunk", "drunk"])
    s = score_series(u, DRUNK)
    assert s.scores.tolist() == pytest.approx([2 / 3, 0.0, 1.0, 1.0])
    assert score_series(u, heavy).scores.max() == 1.0  # clamped
    assert len(score_series(make_user("e", ["", "!!"]), DRUNK)) == 2


def ma_loops(x, w):
    h = w // 2
    return [sum(x[max(0, i - h):i + h + 1]) / len(x[max(0, i - h):i + h + 1]) for i in range(len(x))]


@given(st.lists(st.floats(0, 1), max_size=40), st.sampled_from([1, 3, 5, 7]))
def test_moving_average_oracle(x, w):
    np.testing.assert_allclose(moving_average(x, w), ma_loops(x, w), atol=1e-11)


def test_moving_average_window_checks():
    with pytest.raises(ValueError):
        moving_average([1.0, 2.0], 4)
    x = np.array([0.1, 0.2])
    y = moving_average(x, 1)
    assert y is not x and y.tolist() == x.tolist()


def peaks_by_runs(s, k):
    """Strict maxima via run-length encoding; a flat top reports its first index."""
    runs = []
    for i, v in enumerate(s):
        if not runs or v != runs[-1][0]:
            runs.append((v, i))
    thresh = np.mean(s) + k * np.std(s)
    out = []
    for r in range(1, len(runs) - 1):
        v, start = runs[r]
        if v > runs[r - 1][0] and v > runs[r + 1][0] and v > thresh:
            out.append(start)
    return out


def test_peaks_match_run_oracle(rng):
    for _ in range(100):
        n = int(rng.integers(0, 1001))
        s = rng.integers(0, 5, n) / 4.0  # small alphabet -> many plateaus
        got = [p.index for p in detect_peaks(ScoreSeries("u", s), w=1, k=0.0)]
        assert got == peaks_by_runs(s, 0.0)


def test_peak_examples():
    imp = ScoreSeries("u", np.array([0, 0, 1, 0, 0, 1, 0], dtype=float))
    peaks = detect_peaks(imp, w=1, k=0.5)
    assert [p.index for p in peaks] == [2, 5]
    assert (peaks[0].left_min, peaks[0].right_min) == (0, 3)
    assert detect_peaks(ScoreSeries("u", np.linspace(0, 1, 30)), w=1, k=0) == []
    assert detect_peaks(ScoreSeries("u", np.full(30, 0.4)), w=3, k=0) == []
    assert detect_peaks(ScoreSeries("u", np.array([0.0, 1.0])), w=1, k=0) == []
    with pytest.raises(ValueError):
        detect_peaks(imp, w=1, k=-1)


def test_profile_examples():
    s = ScoreSeries("u", np.zeros(7))
    p = peak_profile(s, [Peak(2, 1.0, 0, 3), Peak(5, 1.0, 3, 6)])
    assert p == PeakProfile("u", 2, 1.0, 0.0, 1.0, 3.0, 0.0)
    empty = peak_profile(s, [])
    assert empty.n_peaks == 0 and empty.mean_height is None and empty.se_interval is None
    one = peak_profile(s, [Peak(4, 0.3, 0, 6)])
    assert (one.se_height, one.mean_interval) == (0.0, None)
    assert empty.vector().tolist() == [0.0] * 6


def welford(xs):
    n, mean, m2 = 0, 0.0, 0.0
    for x in xs:
        n += 1
        d = x - mean
        mean += d / n
        m2 += d * (x - mean)
    se = 0.0 if n < 2 else math.sqrt(m2 / (n - 1)) / math.sqrt(n)
    return mean, se


def test_profile_streaming_oracle(rng):
    for _ in range(50):
        n = int(rng.integers(1, 30))
        idx = np.sort(rng.choice(500, size=n, replace=False))
        peaks = [Peak(int(i), float(h), 0, 0) for i, h in zip(idx, rng.random(n))]
        p = peak_profile(ScoreSeries("u", np.zeros(500)), peaks)
        mh, seh = welford([q.height for q in peaks])
        assert p.n_peaks == n and p.max_height == max(q.height for q in peaks)
        assert abs(p.mean_height - mh) <= 1e-12 and abs(p.se_height - seh) <= 1e-12
        if n >= 2:
            mi, sei = welford(np.diff(idx).astype(float))
            assert abs(p.mean_interval - mi) <= 1e-12 and abs(p.se_interval - sei) <= 1e-12


def test_bot_boundary():
    users = [make_user("all", ["drunk"] * 100), make_user("most", ["drunk"] * 99 + ["hi"]),
             make_user("none", [])]
    flags = {b.user_id: b for b in detect_bots(users, DRUNK)}
    assert flags["all"].flagged and flags["all"].drunk_tweet_fraction == 1.0
    assert not flags["most"].flagged and flags["most"].drunk_tweet_fraction == 0.99
    assert not flags["none"].flagged and flags["none"].drunk_tweet_fraction == 0.0
    assert BOT_THRESHOLD == 0.99


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 300), st.integers(0, 3))
def test_bot_flag_monotone(hits, misses):
    u = make_user("u", ["tipsy"] * hits + ["x"] * misses)
    (before,) = detect_bots([u], DRUNK)
    (after,) = detect_bots([make_user("u", ["tipsy"] * (hits + 1) + ["x"] * misses)], DRUNK)
    assert after.drunk_tweet_fraction >= before.drunk_tweet_fraction
    assert after.flagged or not before.flagged


def test_generated_bots_flagged(lexicons):
    users = generate_synthetic(SyntheticConfig(n_drunk=4, n_nondrunk=4, n_bots=3, seed=2), lexicons)
    flagged = {b.user_id for b in detect_bots(users, lexicons["drunk"]) if b.flagged}
    assert flagged == {"bot000", "bot001", "bot002"}


def _planted_profiles(kind, seed, n=278):
    """Profiles of the generator's planted burst series, one per user."""
    cfg = SyntheticConfig(peak_height=kind)
    r = np.random.default_rng(seed)
    out = []
    for i in range(n):
        s = ScoreSeries(f"u{i}", _burst_profile(r, int(r.integers(30, 121)), cfg))
        out.append(peak_profile(s, detect_peaks(s, w=1, k=1.0)))
    return out


@pytest.mark.parametrize("seed", range(3))
def test_height_summary_bands(seed):
    sym = height_normality_summary(_planted_profiles("normal", seed))
    assert abs(sym["skewness"]) < 0.3
    assert sym["mean"] == pytest.approx(0.35, abs=0.02)
    skewed = height_normality_summary(_planted_profiles("exponential", seed))
    assert skewed["skewness"] > 1


def test_height_summary_degenerate():
    same = [PeakProfile(f"u{i}", 2, 0.4, 0.0, 0.4, 3.0, 0.0) for i in range(4)]
    s = height_normality_summary(same)
    assert s["std"] == 0.0 and s["skewness"] is None and s["excess_kurtosis"] is None
    with pytest.raises(TooFewProfiles):
        height_normality_summary(same[:2] + [PeakProfile("z", 0, None, None, None, None, None)])


def test_planted_intervals_short(planted, lexicons):
    expanded = expand_drunk_lexicon(planted, lexicons["drunk"])
    profiles = []
    for u in planted:
        if u.label is Label.DRUNK:
            s = score_series(u, expanded)
            profiles.append(peak_profile(s, detect_peaks(s)))
    short = [p.mean_interval is not None and p.mean_interval < 100 for p in profiles]
    assert np.mean(short) >= 0.8

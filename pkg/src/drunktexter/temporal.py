"""Per-tweet drunk scores, peak detection, peak profiles and bot flags."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lexicon import match_count, tokenize

__all__ = [
    "ScoreSeries",
    "Peak",
    "PeakProfile",
    "BotFlag",
    "TooFewProfiles",
    "score_series",
    "moving_average",
    "detect_peaks",
    "peak_profile",
    "detect_bots",
    "height_normality_summary",
    "BOT_THRESHOLD",
]

BOT_THRESHOLD = 0.99


class TooFewProfiles(ValueError):
    pass


@dataclass(frozen=True)
class ScoreSeries:
    user_id: str
    scores: np.ndarray
    window: int = 5

    def __len__(self):
        return len(self.scores)


@dataclass(frozen=True)
class Peak:
    index: int
    height: float
    left_min: int
    right_min: int


@dataclass(frozen=True)
class PeakProfile:
    """Six peak statistics.  Entries that need more peaks than exist are None."""

    user_id: str
    n_peaks: int
    mean_height: float | None
    se_height: float | None
    max_height: float | None
    mean_interval: float | None
    se_interval: float | None

    FIELDS = ("n_peaks", "mean_height", "se_height", "max_height", "mean_interval", "se_interval")

    def vector(self):
        """The six statistics as floats, absent ones as 0."""
        return np.array([0.0 if getattr(self, f) is None else float(getattr(self, f)) for f in self.FIELDS])


@dataclass(frozen=True)
class BotFlag:
    user_id: str
    drunk_tweet_fraction: float
    flagged: bool


def score_series(user, weighted, window=5):
    """One score per tweet: matched weight over token count, clamped to [0, 1]."""
    scores = []
    for t in user.tweets:
        toks = tokenize(t.text)
        _, w = match_count(toks, weighted)
        scores.append(min(1.0, max(0.0, w / max(1, len(toks)))))
    return ScoreSeries(user.user_id, np.array(scores, dtype=float), window)


def moving_average(x, w):
    """Centered moving average; the window is truncated at both ends.

    Results are rounded to 12 decimals so flat stretches of the input stay
    exactly flat (otherwise summation error invents strict maxima).
    """
    if w < 1 or w % 2 == 0:
        raise ValueError("window must be a positive odd integer")
    x = np.asarray(x, dtype=float)
    n = x.size
    if n == 0 or w == 1:
        return x.copy()
    h = w // 2
    c = np.concatenate(([0.0], np.cumsum(x)))
    lo = np.clip(np.arange(n) - h, 0, n)
    hi = np.clip(np.arange(n) + h + 1, 0, n)
    return np.round((c[hi] - c[lo]) / (hi - lo), 12)


def _local_maxima(s):
    """Strict interior local maxima; a flat top reports its leftmost index."""
    peaks = []
    n = len(s)
    i = 1
    while i < n - 1:
        if s[i] > s[i - 1]:
            j = i
            while j + 1 < n and s[j + 1] == s[i]:
                j += 1
            if j + 1 < n and s[j + 1] < s[i]:
                peaks.append(i)
            i = j + 1
        else:
            i += 1
    return peaks


def detect_peaks(series, w=None, k=1.0):
    """Local maxima of the smoothed series that rise above ``mean + k * std``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    w = series.window if w is None else w
    s = moving_average(series.scores, w)
    if s.size < 3:
        return []
    thresh = s.mean() + k * s.std()
    idx = [i for i in _local_maxima(s) if s[i] > thresh]
    peaks = []
    for n, i in enumerate(idx):
        lo = idx[n - 1] if n > 0 else 0
        hi = idx[n + 1] if n + 1 < len(idx) else len(s) - 1
        left = lo + int(np.argmin(s[lo:i + 1]))
        right = i + int(np.argmin(s[i:hi + 1]))
        peaks.append(Peak(int(i), float(s[i]), left, right))
    return peaks


def _mean_se(x):
    x = np.asarray(x, dtype=float)
    if len(x) == 1:
        return float(x[0]), 0.0
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(len(x)))


def peak_profile(series, peaks):
    """Count, mean/SE/max height and mean/SE interval (in tweets) of the peaks.

    A single observation has SE 0; intervals need at least two peaks.
    """
    n = len(peaks)
    if n == 0:
        return PeakProfile(series.user_id, 0, None, None, None, None, None)
    heights = [p.height for p in peaks]
    mh, seh = _mean_se(heights)
    mi = sei = None
    if n >= 2:
        mi, sei = _mean_se(np.diff([p.index for p in peaks]))
    return PeakProfile(series.user_id, n, mh, seh, float(max(heights)), mi, sei)


def detect_bots(users, drunk, threshold=BOT_THRESHOLD):
    """Flag users whose share of drunk-keyword tweets is strictly above ``threshold``."""
    out = []
    for u in users:
        n = len(u.tweets)
        if n == 0:
            out.append(BotFlag(u.user_id, 0.0, False))
            continue
        hits = sum(1 for t in u.tweets if any(drunk.matches(tok) for tok in tokenize(t.text)))
        frac = hits / n
        out.append(BotFlag(u.user_id, frac, frac > threshold))
    return out


def height_normality_summary(profiles):
    """Mean, sample std, skewness and excess kurtosis of per-user mean peak height.

    Skewness and kurtosis are the plain moment ratios ``m3/m2**1.5`` and
    ``m4/m2**2 - 3``; both are None when every height is identical.
    """
    h = np.array([p.mean_height for p in profiles if p.n_peaks >= 1], dtype=float)
    if h.size < 3:
        raise TooFewProfiles(f"need at least 3 users with peaks, got {h.size}")
    out = {"n": int(h.size), "mean": float(h.mean()), "std": 0.0,
           "skewness": None, "excess_kurtosis": None}
    if np.all(h == h[0]):
        out["mean"] = float(h[0])
        return out
    d = h - h.mean()
    m2 = np.mean(d ** 2)
    out["std"] = float(h.std(ddof=1))
    if m2 > 0:
        out["skewness"] = float(np.mean(d ** 3) / m2 ** 1.5)
        out["excess_kurtosis"] = float(np.mean(d ** 4) / m2 ** 2 - 3.0)
    return out

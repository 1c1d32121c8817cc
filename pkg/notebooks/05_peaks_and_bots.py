# %% [markdown]
# # Drunk-score peaks and bot flags
#
# Each tweet gets a score from the expanded drunk lexicon. The series is
# smoothed with a centered window and peaks above mean + std are kept.

# %%
import numpy as np

from drunktexter.corpus import Label, SyntheticConfig, generate_synthetic, label_drunk_texters
from drunktexter.lexicon import default_lexicons, expand_drunk_lexicon
from drunktexter.temporal import (detect_bots, detect_peaks, height_normality_summary,
                                  peak_profile, score_series)

lex = default_lexicons()
users = label_drunk_texters(generate_synthetic(SyntheticConfig(seed=1337, n_bots=5), lex),
                            lex["drunk"])
expanded = expand_drunk_lexicon(users, lex["drunk"])

drunk = [u for u in users if u.label is Label.DRUNK]
s = score_series(drunk[0], expanded)
peaks = detect_peaks(s)
print(len(s), "tweets,", len(peaks), "peaks at", [p.index for p in peaks][:10])

# %%
profiles = [peak_profile(sr, detect_peaks(sr)) for sr in (score_series(u, expanded) for u in drunk)]
iv = np.array([p.mean_interval for p in profiles if p.mean_interval is not None])
print("mean interval: median %.1f tweets, %.1f%% under 100" % (np.median(iv), 100 * np.mean(iv < 100)))
print(height_normality_summary(profiles))

# %% [markdown]
# Accounts where more than 99% of tweets carry a drunk keyword look automated.

# %%
flags = detect_bots(users, lex["drunk"])
print([(f.user_id, round(f.drunk_tweet_fraction, 3)) for f in flags if f.flagged])

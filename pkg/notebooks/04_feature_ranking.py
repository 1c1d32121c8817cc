# %% [markdown]
# # Which features separate the cohorts
#
# Every feature is cut into ten equal-frequency bins and scored by chi-square
# and by information gain against the label.

# %%
import numpy as np

from drunktexter.corpus import DaySegment, SyntheticConfig, generate_synthetic, label_drunk_texters
from drunktexter.features import build_dataset
from drunktexter.lexicon import default_lexicons
from drunktexter.rank import rank_features

lex = default_lexicons()
users = label_drunk_texters(generate_synthetic(SyntheticConfig(seed=1337), lex), lex["drunk"])

for seg in DaySegment:
    data = build_dataset(users, seg, lex)
    chi = rank_features(data, criterion="chi2")
    ig = rank_features(data, criterion="infogain")
    print(seg.value)
    for row in chi.rows[:10]:
        print(f"  {row.rank:2d} {row.feature:20s} chi2 {row.chi2:8.2f}  "
              f"ig {row.info_gain:.3f}  (ig rank {ig.rank_of(row.feature)})")

# %% [markdown]
# The drunk feature sits on top by construction: it counts the very keywords the
# labels were built from.

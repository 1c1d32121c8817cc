# %% [markdown]
# # Lexicons and a synthetic corpus
#
# The bundled lexicons hold one word list per category. We generate a small
# planted corpus, label users from their drunk-keyword tweets and look at a few
# of them.

# %%
import numpy as np

from drunktexter.corpus import (DaySegment, Label, SyntheticConfig, day_segment,
                                drunk_tweet_count, generate_synthetic, label_drunk_texters)
from drunktexter.lexicon import default_lexicons, expand_drunk_lexicon, tokenize

lex = default_lexicons()
print(len(lex.names), "categories")
print(sorted(e.pattern for e in lex["drunk"].entries)[:12])

# %% [markdown]
# Labels come from keyword matches: five or more matching tweets make a drunk
# texter, none makes a non-drunk one, anything in between stays unlabeled.

# %%
users = generate_synthetic(SyntheticConfig(seed=1337), lex)
users = label_drunk_texters(users, lex["drunk"])
print({lab.value: sum(u.label is lab for u in users) for lab in Label})

counts = np.array([drunk_tweet_count(u, lex["drunk"]) for u in users])
print("keyword tweets per user: median", np.median(counts), "max", counts.max())

# %%
u = users[0]
for t in u.tweets[:5]:
    print(day_segment(t.timestamp_utc).value, tokenize(t.text))

# %% [markdown]
# PMI expansion finds words that keep showing up next to the seed keywords.

# %%
expanded = expand_drunk_lexicon(users, lex["drunk"])
seed = {e.pattern for e in lex["drunk"].entries}
print([(e.pattern, round(e.weight, 2)) for e in expanded.entries if e.pattern not in seed])

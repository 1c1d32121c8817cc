# %% [markdown]
# # Category usage by cohort
#
# Each user pools all tokens of a segment. Cohort means are in percent of
# tokens; alpha and beta are drunk and non-drunk weekday means, gamma and delta
# the weekend ones.

# %%
import numpy as np

from drunktexter.corpus import SyntheticConfig, generate_synthetic, label_drunk_texters
from drunktexter.features import category_report
from drunktexter.lexicon import default_lexicons

lex = default_lexicons()
users = label_drunk_texters(generate_synthetic(SyntheticConfig(seed=1337), lex), lex["drunk"])
rep = category_report(users, lex)

print(f"{'category':12s}" + "".join(f"{c:>8s}" for c in rep.COLUMNS))
for name, row in rep.rows.items():
    print(f"{name:12s}" + "".join(f"{v:8.2f}" for v in row))

# %% [markdown]
# Ratio of drunk to non-drunk usage on weekdays, largest first.

# %%
ratio = {n: r[0] / r[1] for n, r in rep.rows.items() if r[1] > 0}
for n in sorted(ratio, key=ratio.get, reverse=True)[:8]:
    print(f"{n:12s} {ratio[n]:6.2f}")

# %% [markdown]
# # Communities of drunk texters
#
# Users are joined when their peak profiles point the same way (cosine above a
# threshold), or when they share friends or followers. Louvain then groups
# them.

# %%
from drunktexter.community import (bond_graph, degree_loglog_slope, interest_graph, louvain,
                                   planted_profile_blocks)

profiles = planted_profile_blocks(seed=0)
g = interest_graph(profiles, threshold=0.2)
part = louvain(g, seed=0)
print(len(g.nodes), "users,", len(g.edges), "edges")
print("communities", part.sizes(), "Q %.4f" % part.modularity)
print("modularity by level", [round(q, 4) for q in part.history])

# %% [markdown]
# The generated corpus also carries friend and follower lists.

# %%
from drunktexter.corpus import Label, SyntheticConfig, generate_synthetic, label_drunk_texters
from drunktexter.lexicon import default_lexicons

lex = default_lexicons()
users = label_drunk_texters(generate_synthetic(SyntheticConfig(seed=1337), lex), lex["drunk"])
drunk = [u for u in users if u.label is Label.DRUNK]
for rel in ("friends", "followers"):
    bg = bond_graph(drunk, rel, min_common=1)
    if bg.edges:
        p = louvain(bg, seed=0)
        print(rel, len(bg.edges), "edges,", p.n_communities, "communities, Q %.3f" % p.modularity,
              "slope", degree_loglog_slope(bg))

"""Lexicon files, tokenization and token/category matching.

A lexicon file is plain UTF-8 text::

    # category: drunk
    # size: 61
    drunk
    drink*<TAB>0.8

``# category:`` opens a category, ``# size:`` optionally declares how many
entries it must hold, other ``#`` lines are comments.  A trailing ``*``
marks a stem (prefix) pattern.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

__all__ = [
    "LexiconError",
    "EmptyLexicon",
    "EmptyCorpus",
    "LexiconEntry",
    "LexiconCategory",
    "LexiconSet",
    "REQUIRED_CATEGORIES",
    "tokenize",
    "match_count",
    "load_lexicon_file",
    "load_lexicons",
    "default_lexicons",
    "format_lexicon",
    "cooccurrence_pmi",
    "expand_drunk_lexicon",
]


class LexiconError(ValueError):
    pass


class EmptyLexicon(LexiconError):
    pass


class EmptyCorpus(ValueError):
    pass


REQUIRED_CATEGORIES = (
    "drunk", "health", "food",
    "stress_selfesteem", "stress_interpersonal", "stress_smoking",
    "stress_financial", "stress_family",
    "swear", "money", "sentiment_pos", "sentiment_neg",
    "social", "family", "friends", "anxiety", "anger", "sadness", "body",
    "sexual", "ingestion", "leisure", "religious",
    "function_words", "pronouns", "prepositions",
)


@dataclass(frozen=True, order=True)
class LexiconEntry:
    pattern: str
    weight: float = 1.0

    def __post_init__(self):
        p = self.pattern
        if not p or p == "*":
            raise LexiconError("empty lexicon pattern")
        if "*" in p[:-1]:
            raise LexiconError(f"'*' allowed only at the end of a pattern: {p!r}")
        if p != p.lower():
            raise LexiconError(f"pattern must be lowercase: {p!r}")
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise LexiconError(f"weight must be finite and >= 0: {p!r}")

    @property
    def is_stem(self):
        return self.pattern.endswith("*")

    @property
    def stem(self):
        return self.pattern[:-1] if self.is_stem else self.pattern

    def matches(self, token):
        if self.is_stem:
            return token.startswith(self.pattern[:-1])
        return token == self.pattern


@dataclass(frozen=True)
class LexiconCategory:
    """A named word class.  Entries are kept in lexicographic pattern order."""

    name: str
    entries: tuple
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: e.pattern))
        seen = set()
        for e in entries:
            if e.pattern in seen:
                raise LexiconError(f"duplicate pattern {e.pattern!r} in category {self.name!r}")
            seen.add(e.pattern)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_words(cls, name, words, weight=1.0):
        return cls(name, tuple(LexiconEntry(w, weight) for w in words))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def patterns(self):
        return [e.pattern for e in self.entries]

    def lookup(self, token):
        """First matching entry in pattern order, or None."""
        try:
            return self._cache[token]
        except KeyError:
            pass
        hit = None
        for e in self.entries:
            if e.matches(token):
                hit = e
                break
        self._cache[token] = hit
        return hit

    def matches(self, token):
        return self.lookup(token) is not None


@dataclass(frozen=True)
class LexiconSet:
    categories: dict
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __getitem__(self, name):
        return self.categories[name]

    def __contains__(self, name):
        return name in self.categories

    def __iter__(self):
        return iter(self.categories)

    def __len__(self):
        return len(self.categories)

    @property
    def names(self):
        return list(self.categories)

    def require(self, *names):
        missing = [n for n in names if n not in self.categories]
        if missing:
            raise LexiconError(f"missing lexicon categories: {', '.join(missing)}")

    def match_vector(self, token, names):
        """0/1 membership of ``token`` in each category of ``names`` (cached)."""
        table = self._cache.setdefault(tuple(names), {})
        try:
            return table[token]
        except KeyError:
            v = np.array([1.0 if self.categories[n].matches(token) else 0.0 for n in names])
            table[token] = v
            return v

    def replace(self, category):
        cats = dict(self.categories)
        cats[category.name] = category
        return LexiconSet(cats)


_URL = re.compile(r"(?:https?://|www\.)\S*")
_MENTION = re.compile(r"@\w+")
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")


def tokenize(text):
    """Lowercased word tokens with URLs, @mentions and the ``#`` sigil removed."""
    text = text.lower().replace("’", "'")
    text = _URL.sub(" ", text)
    text = _MENTION.sub(" ", text)
    text = text.replace("#", "")
    return _TOKEN.findall(text)


def match_count(tokens, category):
    """Return ``(count, weight_sum)`` of tokens matched by ``category``.

    Each token is matched at most once, by the first entry in lexicographic
    pattern order.
    """
    count = 0
    weight = 0.0
    lookup = category.lookup
    for tok in tokens:
        e = lookup(tok)
        if e is not None:
            count += 1
            weight += e.weight
    return count, weight


# -- file format -------------------------------------------------------------

_HEADER = re.compile(r"#\s*(category|size)\s*:\s*(\S+)\s*$")


def _parse_lexicon(text, source="<string>"):
    cats = []
    name, entries, size = None, [], None

    def close():
        if name is None:
            return
        cat = LexiconCategory(name, tuple(entries))
        if size is not None and len(cat) != size:
            raise LexiconError(f"{source}: category {name!r} declares {size} entries, has {len(cat)}")
        cats.append(cat)

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m and m.group(1) == "category":
                close()
                name, entries, size = m.group(2), [], None
            elif m:
                size = int(m.group(2))
            continue
        if name is None:
            raise LexiconError(f"{source}:{line_no}: entry before any '# category:' header")
        pattern, _, weight = raw.strip().partition("\t")
        try:
            entries.append(LexiconEntry(pattern.strip(), float(weight) if weight.strip() else 1.0))
        except ValueError as exc:
            raise LexiconError(f"{source}:{line_no}: {exc}") from None
    close()
    return cats


def load_lexicon_file(path):
    path = Path(path)
    return _parse_lexicon(path.read_text(encoding="utf-8"), str(path))


def _merge(categories):
    out = {}
    for cat in categories:
        if cat.name in out:
            raise LexiconError(f"category {cat.name!r} defined more than once")
        out[cat.name] = cat
    return LexiconSet(out)


def load_lexicons(directory):
    """Load every ``*.lex`` file in ``directory`` (sorted by file name)."""
    directory = Path(directory)
    files = sorted(directory.glob("*.lex"))
    if not files:
        raise LexiconError(f"no .lex files in {directory}")
    cats = []
    for f in files:
        cats.extend(load_lexicon_file(f))
    return _merge(cats)


def default_lexicons():
    """The open lexicons shipped with the package."""
    root = resources.files("drunktexter") / "lexicons"
    cats = []
    for f in sorted(root.iterdir(), key=lambda p: p.name):
        if f.name.endswith(".lex"):
            cats.extend(_parse_lexicon(f.read_text(encoding="utf-8"), f.name))
    return _merge(cats)


def format_lexicon(category, declare_size=False):
    lines = [f"# category: {category.name}"]
    if declare_size:
        lines.append(f"# size: {len(category)}")
    for e in category.entries:
        lines.append(e.pattern if e.weight == 1.0 else f"{e.pattern}\t{e.weight!r}")
    return "\n".join(lines) + "\n"


# -- co-occurrence expansion -------------------------------------------------

def cooccurrence_pmi(token_sets, seed):
    """Tweet-level PMI between each candidate token and the event "tweet hits the seed".

    ``token_sets`` holds one set of tokens per tweet.  Returns
    ``{token: (cooccur, pmi)}`` for every token outside the seed that shares
    at least one tweet with a seed hit.
    """
    n = len(token_sets)
    hits = [any(seed.matches(t) for t in ts) for ts in token_sets]
    n_hit = sum(hits)
    df = Counter()
    co = Counter()
    for ts, hit in zip(token_sets, hits):
        for t in ts:
            if seed.matches(t):
                continue
            df[t] += 1
            if hit:
                co[t] += 1
    out = {}
    for t in sorted(co):
        out[t] = (co[t], math.log2(co[t] * n / (df[t] * n_hit)))
    return out


def expand_drunk_lexicon(users, seed, min_pmi=1.0, min_cooccur=5):
    """Add tokens that co-occur with seed hits to the seed category.

    Expansion entries carry weight ``min(1, pmi / 4)``; seed entries keep
    their own weights.
    """
    token_sets = [set(tokenize(tw.text)) for u in users for tw in u.tweets]
    if not token_sets:
        raise EmptyCorpus("no tweets to expand the lexicon from")
    added = []
    for tok, (n_co, pmi) in cooccurrence_pmi(token_sets, seed).items():
        if n_co >= min_cooccur and pmi >= min_pmi:
            added.append(LexiconEntry(tok, min(1.0, pmi / 4.0)))
    return LexiconCategory(seed.name, seed.entries + tuple(added))

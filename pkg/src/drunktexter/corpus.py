"""Timelines, JSONL corpus files, cohort labeling and a planted-signal generator."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ._rng import DEFAULT_SEED, substream
from .lexicon import EmptyLexicon, tokenize

__all__ = [
    "Label",
    "DaySegment",
    "Tweet",
    "UserRecord",
    "CorpusError",
    "MalformedLine",
    "DuplicateTweet",
    "InvalidConfig",
    "load_corpus",
    "dump_corpus",
    "dumps_user",
    "day_segment",
    "segment_tweets",
    "drunk_tweet_count",
    "label_drunk_texters",
    "SyntheticConfig",
    "PLANTED_RATES",
    "generate_synthetic",
]


class Label(str, enum.Enum):
    DRUNK = "drunk"
    NONDRUNK = "nondrunk"
    UNLABELED = "unlabeled"


class DaySegment(str, enum.Enum):
    WEEKDAY = "weekday"
    WEEKEND = "weekend"


class CorpusError(ValueError):
    pass


class MalformedLine(CorpusError):
    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class DuplicateTweet(CorpusError):
    def __init__(self, tweet_id):
        super().__init__(f"duplicate tweet id {tweet_id!r}")
        self.tweet_id = tweet_id


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True)
class Tweet:
    tweet_id: str
    user_id: str
    timestamp_utc: int
    text: str

    def __post_init__(self):
        if not self.tweet_id:
            raise CorpusError("empty tweet id")
        if self.timestamp_utc <= 0:
            raise CorpusError(f"tweet {self.tweet_id!r}: timestamp must be positive")


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    label: Label = Label.UNLABELED
    tweets: tuple = ()
    friends: frozenset = field(default_factory=frozenset)
    followers: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        tweets = tuple(sorted(self.tweets, key=lambda t: (t.timestamp_utc, t.tweet_id)))
        object.__setattr__(self, "tweets", tweets)
        object.__setattr__(self, "label", Label(self.label))
        object.__setattr__(self, "friends", frozenset(self.friends))
        object.__setattr__(self, "followers", frozenset(self.followers))
        if self.user_id in self.friends or self.user_id in self.followers:
            raise CorpusError(f"user {self.user_id!r} lists itself as friend or follower")

    def with_label(self, label):
        return replace(self, label=Label(label))


# -- JSONL I/O ---------------------------------------------------------------

def _require(cond, line_no, reason):
    if not cond:
        raise MalformedLine(line_no, reason)


def _is_str_list(v):
    return isinstance(v, list) and all(isinstance(x, str) for x in v)


def _parse_user(obj, line_no):
    _require(isinstance(obj, dict), line_no, "expected a JSON object")
    uid = obj.get("user_id")
    _require(isinstance(uid, str) and uid, line_no, "missing or empty user_id")
    label = obj.get("label", Label.UNLABELED.value)
    _require(label in {l.value for l in Label}, line_no, f"unknown label {label!r}")
    raw = obj.get("tweets", [])
    _require(isinstance(raw, list), line_no, "tweets must be a list")
    tweets = []
    for t in raw:
        _require(isinstance(t, dict), line_no, "tweet must be an object")
        tid, ts, text = t.get("id"), t.get("ts"), t.get("text")
        _require(isinstance(tid, str) and tid, line_no, "tweet id must be a nonempty string")
        _require(isinstance(ts, int) and not isinstance(ts, bool) and ts > 0, line_no,
                 f"tweet {tid!r}: ts must be a positive integer")
        _require(isinstance(text, str), line_no, f"tweet {tid!r}: text must be a string")
        tweets.append(Tweet(tid, uid, ts, text))
    friends = obj.get("friends", [])
    followers = obj.get("followers", [])
    _require(_is_str_list(friends), line_no, "friends must be a list of strings")
    _require(_is_str_list(followers), line_no, "followers must be a list of strings")
    _require(uid not in friends and uid not in followers, line_no,
             "user lists itself as friend or follower")
    return UserRecord(uid, Label(label), tuple(tweets), frozenset(friends), frozenset(followers))


def load_corpus(path):
    """Read a JSONL corpus (one user per line)."""
    users = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(line_no, f"invalid JSON ({exc.msg})") from None
            user = _parse_user(obj, line_no)
            for t in user.tweets:
                if t.tweet_id in seen:
                    raise DuplicateTweet(t.tweet_id)
                seen.add(t.tweet_id)
            users.append(user)
    return users


def dumps_user(user):
    obj = {
        "user_id": user.user_id,
        "label": user.label.value,
        "tweets": [{"id": t.tweet_id, "ts": t.timestamp_utc, "text": t.text} for t in user.tweets],
        "friends": sorted(user.friends),
        "followers": sorted(user.followers),
    }
    return json.dumps(obj, ensure_ascii=False)


def dump_corpus(users, path):
    Path(path).write_text("".join(dumps_user(u) + "\n" for u in users), encoding="utf-8")


# -- segments and labels -----------------------------------------------------

def day_segment(timestamp_utc):
    """Saturday and Sunday in UTC are the weekend."""
    wd = datetime.fromtimestamp(timestamp_utc, tz=timezone.utc).weekday()
    return DaySegment.WEEKEND if wd >= 5 else DaySegment.WEEKDAY


def segment_tweets(user, segment):
    segment = DaySegment(segment)
    return tuple(t for t in user.tweets if day_segment(t.timestamp_utc) is segment)


def drunk_tweet_count(user, drunk_lexicon):
    return sum(1 for t in user.tweets if any(drunk_lexicon.matches(tok) for tok in tokenize(t.text)))


def label_drunk_texters(users, drunk_lexicon, min_drunk_tweets=5):
    """Relabel users: DRUNK with >= ``min_drunk_tweets`` keyword tweets,
    NONDRUNK with none, UNLABELED in between."""
    if min_drunk_tweets < 1:
        raise ValueError("min_drunk_tweets must be >= 1")
    if len(drunk_lexicon) == 0:
        raise EmptyLexicon(f"category {drunk_lexicon.name!r} has no entries")
    out = []
    for u in users:
        n = drunk_tweet_count(u, drunk_lexicon)
        if n >= min_drunk_tweets:
            label = Label.DRUNK
        elif n == 0:
            label = Label.NONDRUNK
        else:
            label = Label.UNLABELED
        out.append(u.with_label(label))
    return out


# -- synthetic corpus --------------------------------------------------------

# Per-token rates in percent: (drunk weekday, non-drunk weekday, drunk weekend, non-drunk weekend).
# The drunk cohort leads on anger, sexual, ingestion and social; religious is exaggerated
# so its (drunk < non-drunk) direction survives sampling noise.
PLANTED_RATES = {
    "social": (8.69, 6.88, 8.86, 6.78),
    "family": (0.40, 0.27, 0.48, 0.29),
    "friends": (0.28, 0.17, 0.31, 0.17),
    "anxiety": (0.33, 0.22, 0.30, 0.22),
    "anger": (1.55, 0.79, 1.62, 0.78),
    "sadness": (0.50, 0.34, 0.52, 0.33),
    "body": (1.22, 0.68, 1.24, 0.68),
    "sexual": (1.10, 0.61, 1.19, 0.57),
    "ingestion": (0.79, 0.36, 0.83, 0.35),
    "leisure": (1.83, 1.42, 2.14, 1.56),
    "religious": (0.22, 0.41, 0.21, 0.42),
    "health": (0.90, 0.60, 0.95, 0.60),
    "food": (1.00, 0.70, 1.10, 0.75),
    "stress_selfesteem": (0.05, 0.09, 0.05, 0.09),
    "stress_interpersonal": (0.30, 0.18, 0.32, 0.18),
    "stress_smoking": (0.35, 0.15, 0.38, 0.15),
    "stress_financial": (0.05, 0.10, 0.05, 0.10),
    "stress_family": (0.25, 0.15, 0.25, 0.15),
    "swear": (2.00, 0.40, 2.20, 0.40),
    "money": (0.60, 0.45, 0.40, 0.45),
    "sentiment_pos": (4.00, 3.20, 4.20, 3.30),
    "sentiment_neg": (2.80, 2.20, 2.90, 2.20),
    "function_words": (6.0, 6.0, 6.0, 6.0),
    "pronouns": (3.0, 3.0, 3.0, 3.0),
    "first_person_singular": (2.0, 2.0, 2.0, 2.0),
    "impersonal_pronouns": (1.5, 1.5, 1.5, 1.5),
    "prepositions": (3.0, 3.0, 3.0, 3.0),
    "conjunctions": (2.0, 2.0, 2.0, 2.0),
    "auxiliary_verbs": (2.0, 2.0, 2.0, 2.0),
    "adverbs": (1.5, 1.5, 1.5, 1.5),
    "quantifiers": (1.0, 1.0, 1.0, 1.0),
    "time": (1.5, 1.5, 1.5, 1.5),
    "space": (1.5, 1.5, 1.5, 1.5),
    "motion": (1.0, 1.0, 1.0, 1.0),
    "home": (0.4, 0.4, 0.4, 0.4),
    "certainty": (0.6, 0.6, 0.6, 0.6),
}

_FILLER = (
    "phone car window street city paper table idea picture news video photo color "
    "green blue train bus road book class school work office project email meeting "
    "laptop chair door wall floor garden tree river bridge market store shop ticket "
    "line station plan list note report question answer reason story topic point "
    "thing stuff place area number group team score season episode channel update "
    "version system screen button camera sound voice letter word name page"
).split()

# Slang that only ever appears next to drunk-lexicon tokens; gives the
# co-occurrence expansion something to find.
_COMPANIONS = ("turnt", "jager", "fireball", "bottomsup", "cheers", "yolo")

_JAN_2014 = 1388534400
_MONTH = 31 * 86400


@dataclass(frozen=True)
class SyntheticConfig:
    n_drunk: int = 278
    n_nondrunk: int = 278
    tweets_per_user_range: tuple = (30, 120)
    drunk_token_rate: float = 0.25
    seed: int = DEFAULT_SEED
    n_random: int = 0
    n_bots: int = 0
    peak_spacing: float = 40.0
    peak_height: str = "normal"
    null: bool = False
    neighbor_boost: float = 0.3

    def validate(self):
        lo, hi = self.tweets_per_user_range
        if self.n_drunk <= 0 or self.n_nondrunk <= 0:
            raise InvalidConfig("cohort sizes must be positive")
        if self.n_random < 0 or self.n_bots < 0:
            raise InvalidConfig("n_random and n_bots must be >= 0")
        if not 1 <= lo <= hi:
            raise InvalidConfig("tweets_per_user_range must satisfy 1 <= min <= max")
        if not 0.0 <= self.drunk_token_rate <= 1.0:
            raise InvalidConfig("drunk_token_rate must lie in [0, 1]")
        if self.peak_spacing < 1:
            raise InvalidConfig("peak_spacing must be >= 1")
        if self.peak_height not in ("normal", "exponential"):
            raise InvalidConfig("peak_height must be 'normal' or 'exponential'")
        if not 0.0 <= self.neighbor_boost <= 1.0:
            raise InvalidConfig("neighbor_boost must lie in [0, 1]")


class _Vocab:
    """Emittable surface tokens per category."""

    def __init__(self, lexicons):
        drunk = lexicons["drunk"]
        self.drunk = sorted({e.stem for e in drunk})
        self.names = [n for n in lexicons.names if n in PLANTED_RATES]
        self.words = {}
        for n in self.names:
            toks = sorted({e.stem for e in lexicons[n]})
            toks = [t for t in toks if tokenize(t) == [t] and not drunk.matches(t)]
            self.words[n] = toks
        self.names = [n for n in self.names if self.words[n]]
        cats = [lexicons[n] for n in lexicons.names]
        self.filler = [w for w in _FILLER if not any(c.matches(w) for c in cats)]
        self.companions = [w for w in _COMPANIONS if not any(c.matches(w) for c in cats)]
        if not self.filler:
            raise InvalidConfig("every filler word collides with a lexicon category")
        self.table = {
            cohort: {
                seg: np.array([PLANTED_RATES[n][col] / 100.0 for n in self.names])
                for seg, col in zip((DaySegment.WEEKDAY, DaySegment.WEEKEND),
                                    (0, 2) if cohort == "drunk" else (1, 3))
            }
            for cohort in ("drunk", "nondrunk")
        }


def _burst_profile(rng, n, cfg):
    """Per-tweet extra drunk-token rate: short bursts at geometric spacing."""
    bump = np.zeros(n)
    if cfg.peak_height == "normal":
        h = float(np.clip(rng.normal(0.35, 0.07), 0.05, 0.7))
    else:
        h = 0.1 + float(rng.exponential(0.15))
    p = 1.0 / cfg.peak_spacing
    c = int(rng.geometric(p)) - 1
    while c < n:
        for off, f in ((-1, 0.5), (0, 1.0), (1, 0.5)):
            if 0 <= c + off < n:
                bump[c + off] = max(bump[c + off], h * f)
        c += int(rng.geometric(p))
    return bump


# Share of a drunk texter's tweets with no baseline drunk vocabulary.  The
# remaining tweets carry the rate scaled up, so the per-token mean is kept.
SOBER_SHARE = 0.3


def _user_tweets(rng, uid, cohort, cfg, vocab, drunk_rate, forced_drunk=0):
    lo, hi = cfg.tweets_per_user_range
    n = int(rng.integers(lo, hi + 1))
    ts = np.sort(rng.integers(_JAN_2014, _JAN_2014 + _MONTH, size=n))
    jitter = rng.lognormal(0.0, 0.25, size=len(vocab.names))
    bursts = _burst_profile(rng, n, cfg) if cohort == "drunk" and drunk_rate > 0 else np.zeros(n)
    sober = rng.random(n) < SOBER_SHARE
    forced = set(rng.choice(n, size=min(forced_drunk, n), replace=False).tolist()) if forced_drunk else set()
    n_cat = len(vocab.names)
    tweets = []
    for i in range(n):
        seg = day_segment(int(ts[i]))
        rates = vocab.table[cohort][seg] * jitter
        base = 0.0 if sober[i] else drunk_rate / (1.0 - SOBER_SHARE)
        p_d = min(0.95, base + bursts[i])
        scale = min(1.0, (1.0 - p_d) / rates.sum()) if rates.sum() > 0 else 1.0
        probs = np.concatenate(([p_d], rates * scale))
        probs = np.append(probs, max(0.0, 1.0 - probs.sum()))
        probs /= probs.sum()
        length = int(rng.integers(6, 19))
        slots = rng.choice(n_cat + 2, size=length, p=probs)
        if i in forced:
            slots[int(rng.integers(length))] = 0
        u = rng.random(length)
        words = []
        for s, r in zip(slots, u):
            if s == 0:
                pool = vocab.drunk
            elif s <= n_cat:
                pool = vocab.words[vocab.names[s - 1]]
            else:
                pool = vocab.filler
            words.append(pool[int(r * len(pool))])
        if cohort == "drunk" and vocab.companions and (slots == 0).any() and rng.random() < 0.3:
            words.append(vocab.companions[int(rng.integers(len(vocab.companions)))])
        if rng.random() < 0.05:
            words.insert(0, "@friend%d" % int(rng.integers(1000)))
        if rng.random() < 0.05:
            words.append("http://t.co/%x" % int(rng.integers(1 << 20)))
        tweets.append(Tweet(f"{uid}-{i:04d}", uid, int(ts[i]), " ".join(words)))
    return tuple(tweets)


_POOL = 20000
_GROUPS = 40
_GROUP_SIZE = 15


def _neighbors(rng, boosted, boost):
    k = int(rng.integers(20, 81))
    group = int(rng.integers(_GROUPS))
    out = set()
    for _ in range(k):
        if boosted and rng.random() < boost:
            out.add("hub%03d-%02d" % (group, int(rng.integers(_GROUP_SIZE))))
        else:
            out.add("acct%05d" % int(rng.integers(_POOL)))
    return frozenset(out)


def generate_synthetic(config, lexicons):
    """Deterministic synthetic corpus with planted cohort differences.

    Drunk users emit drunk-lexicon tokens at ``drunk_token_rate`` per token,
    plus bursts spaced geometrically (mean ``peak_spacing`` tweets); the other
    categories follow :data:`PLANTED_RATES`.  Non-drunk users never emit a
    drunk-lexicon token.  Drunk users draw part of their friends and followers
    from shared hub accounts.  With ``null=True`` both cohorts are generated
    the same way, so labels carry no signal.
    """
    config.validate()
    lexicons.require("drunk", "swear", "sentiment_pos", "sentiment_neg")
    vocab = _Vocab(lexicons)
    cfg = config
    users = []

    def make(kind, idx, uid, label, cohort, drunk_rate, boosted, forced=0):
        rng = substream(cfg.seed, "generator", kind, idx)
        tweets = _user_tweets(rng, uid, cohort, cfg, vocab, drunk_rate, forced)
        friends = _neighbors(rng, boosted, cfg.neighbor_boost)
        followers = _neighbors(rng, boosted, cfg.neighbor_boost)
        users.append(UserRecord(uid, label, tweets, friends, followers))

    for i in range(cfg.n_drunk):
        if cfg.null:
            make(0, i, f"d{i:04d}", Label.DRUNK, "nondrunk", 0.0, False)
        else:
            make(0, i, f"d{i:04d}", Label.DRUNK, "drunk", cfg.drunk_token_rate, True)
    for i in range(cfg.n_nondrunk):
        make(1, i, f"n{i:04d}", Label.NONDRUNK, "nondrunk", 0.0, False)
    for i in range(cfg.n_random):
        rng = substream(cfg.seed, "generator-mentions", i)
        make(2, i, f"r{i:04d}", Label.UNLABELED, "nondrunk", 0.0, False,
             forced=int(rng.integers(1, 5)))
    for i in range(cfg.n_bots):
        make(3, i, f"bot{i:03d}", Label.DRUNK, "drunk", 0.6, True, forced=10**9)
    return users

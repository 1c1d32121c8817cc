"""Batch command line: one subcommand per pipeline stage, plus ``all``.

Every run writes ``<out>/manifests/<stage>.json`` holding the stage config,
the root seed, the sha256 of the input corpus and lexicons, and the sha256
of each emitted file.  Paths never enter a manifest, so an output tree is
comparable across machines.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from pathlib import Path

from . import __version__
from ._rng import DEFAULT_SEED, substream_seed
from .classify import ALL_KINDS, ClassifierSpec, Kind, cross_validate
from .community import bond_graph, degree_loglog_slope, interest_graph, louvain, modularity
from .corpus import (CorpusError, DaySegment, InvalidConfig, Label, SyntheticConfig, dumps_user,
                     generate_synthetic, label_drunk_texters, load_corpus)
from .features import CategoryReport, EmptySegment, FeatureSchema, build_dataset, category_report
from .features import featurize_user
from .lexicon import EmptyCorpus, LexiconError, default_lexicons, expand_drunk_lexicon
from .lexicon import format_lexicon, load_lexicons
from .rank import rank_features
from .temporal import (PeakProfile, TooFewProfiles, detect_bots, detect_peaks,
                       height_normality_summary, peak_profile, score_series)

STAGES = ("generate", "label", "featurize", "report-categories", "evaluate", "rank",
          "peaks", "bots", "communities")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# -- helpers -------------------------------------------------------------------

def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _sha(data):
    return hashlib.sha256(data).hexdigest()


class _Writer:
    """Collects the files a stage emits so the manifest can hash them."""

    def __init__(self, out):
        self.out = Path(out)
        self.files = {}

    def write(self, name, text):
        data = text.encode("utf-8")
        self.out.mkdir(parents=True, exist_ok=True)
        (self.out / name).write_bytes(data)
        self.files[name] = _sha(data)

    def manifest(self, stage, config, inputs):
        body = {
            "stage": stage,
            "version": __version__,
            "seed": config.get("seed"),
            "config": config,
            "inputs": inputs,
            "outputs": dict(sorted(self.files.items())),
        }
        (self.out / "manifests").mkdir(parents=True, exist_ok=True)
        name = f"{stage}_{config['mode']}" if stage == "communities" else stage
        (self.out / "manifests" / f"{name}.json").write_text(_json_text(body), encoding="utf-8")
        return body


def _lexicons(args):
    try:
        lex = load_lexicons(args.lexicons) if args.lexicons else default_lexicons()
        lex.require("drunk")
    except (OSError, LexiconError) as exc:
        raise DataError(f"cannot load lexicons: {exc}") from None
    return lex


def _lexicon_hash(lex):
    return _sha("".join(format_lexicon(lex[n], declare_size=True) for n in lex.names).encode("utf-8"))


def _synthetic_config(args):
    cfg = SyntheticConfig(
        n_drunk=args.n_drunk, n_nondrunk=args.n_nondrunk,
        tweets_per_user_range=(args.min_tweets, args.max_tweets),
        drunk_token_rate=args.drunk_token_rate, seed=args.seed,
        n_random=args.n_random, n_bots=args.n_bots, peak_spacing=args.peak_spacing,
        null=args.null,
    )
    try:
        cfg.validate()
    except InvalidConfig as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _generator_config(cfg):
    return {"n_drunk": cfg.n_drunk, "n_nondrunk": cfg.n_nondrunk,
            "tweets_per_user_range": list(cfg.tweets_per_user_range),
            "drunk_token_rate": cfg.drunk_token_rate, "n_random": cfg.n_random,
            "n_bots": cfg.n_bots, "peak_spacing": cfg.peak_spacing, "null": cfg.null}


def _corpus_text(users):
    return "".join(dumps_user(u) + "\n" for u in users)


def _users(args, lex, relabel=True):
    """Users from ``--corpus`` or, with ``--synthetic``, freshly generated and labeled.

    Returns (users, input description for the manifest).
    """
    if args.synthetic:
        cfg = _synthetic_config(args)
        users = generate_synthetic(cfg, lex)
        if relabel:
            users = label_drunk_texters(users, lex["drunk"])
        return users, {"synthetic": _generator_config(cfg),
                       "corpus_sha256": _sha(_corpus_text(users).encode("utf-8"))}
    if not args.corpus:
        raise UsageError("either --corpus PATH or --synthetic is required")
    path = Path(args.corpus)
    try:
        raw = path.read_bytes()
        users = load_corpus(path)
    except OSError as exc:
        raise DataError(f"cannot read corpus: {exc}") from None
    return users, {"corpus_sha256": _sha(raw)}


def _segments(args):
    if args.segment == "both":
        return (DaySegment.WEEKDAY, DaySegment.WEEKEND)
    return (DaySegment(args.segment),)


def _base_config(args, **extra):
    cfg = {"seed": args.seed, "segment": args.segment}
    cfg.update(extra)
    return cfg


# -- stages ----------------------------------------------------------------------

def _generate(args, w):
    lex = _lexicons(args)
    cfg = _synthetic_config(args)
    users = generate_synthetic(cfg, lex)
    w.write("corpus.jsonl", _corpus_text(users))
    return _base_config(args, generator=_generator_config(cfg)), {"lexicons_sha256": _lexicon_hash(lex)}


def _label(args, w):
    lex = _lexicons(args)
    users, inputs = _users(args, lex, relabel=False)
    users = label_drunk_texters(users, lex["drunk"], args.min_drunk_tweets)
    w.write("labeled.jsonl", _corpus_text(users))
    counts = {lab.value: sum(u.label is lab for u in users) for lab in Label}
    w.write("label_counts.json", _json_text(counts))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args, min_drunk_tweets=args.min_drunk_tweets), inputs


def _featurize(args, w):
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    schema = FeatureSchema.from_lexicons(lex)
    rows = []
    for u in users:
        for seg in _segments(args):
            try:
                fv = featurize_user(u, seg, lex, schema)
            except EmptySegment:
                continue
            rows.append([float(v) for v in fv.values] + [u.user_id, seg.value, u.label.value])
    w.write("features.csv", _csv_text(list(schema.names) + ["user_id", "segment", "label"], rows))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args), inputs


def _report(args, w):
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    rep = category_report(users, lex)
    rows = [[name, *vals] for name, vals in rep.rows.items()]
    w.write("categories.csv", _csv_text(["category", *CategoryReport.COLUMNS], rows))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args), inputs


def _kinds(name):
    return ALL_KINDS if name == "all" else (Kind(name),)


def _evaluate(args, w):
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    negative = Label.NONDRUNK if args.negative_set == "nondrunk" else Label.UNLABELED
    fold_seed = substream_seed(args.seed, "folds")
    train_seed = substream_seed(args.seed, "trainers")
    rows, detail = [], []
    for seg in _segments(args):
        data = build_dataset(users, seg, lex, negative=negative)
        for kind in _kinds(args.classifier):
            rep = cross_validate(ClassifierSpec(kind, seed=train_seed), data, k=args.k, seed=fold_seed)
            rows.append([seg.value, rep.classifier, *rep.row()])
            d = rep.to_dict()
            d["segment"] = seg.value
            d["n"] = data.n
            detail.append(d)
    w.write("evaluation.csv", _csv_text(["segment", "classifier", "accuracy", "precision",
                                         "recall", "f1", "roc_auc"], rows))
    w.write("evaluation.json", _json_text(detail))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args, classifier=args.classifier, k=args.k,
                        negative_set=args.negative_set), inputs


def _rank(args, w):
    if args.bins < 2:
        raise UsageError("--bins must be at least 2")
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    for seg in _segments(args):
        data = build_dataset(users, seg, lex)
        ranking = rank_features(data, b=args.bins, criterion=args.criterion)
        rows = [[r.rank, r.feature, r.chi2, r.info_gain] for r in ranking]
        w.write(f"ranking_{seg.value}.csv", _csv_text(["rank", "feature", "chi2", "info_gain"], rows))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args, bins=args.bins, criterion=args.criterion), inputs


def _profiles(users, lex, args):
    """Expanded drunk lexicon and peak profiles of the drunk texters."""
    expanded = expand_drunk_lexicon(users, lex["drunk"], args.min_pmi, args.min_cooccur)
    profiles = []
    for u in users:
        if u.label is not Label.DRUNK or not u.tweets:
            continue
        s = score_series(u, expanded, args.window)
        profiles.append(peak_profile(s, detect_peaks(s, args.window, args.k)))
    return expanded, profiles


def _check_peak_flags(args):
    if args.window < 1 or args.window % 2 == 0:
        raise UsageError("--window must be a positive odd integer")
    if args.k < 0:
        raise UsageError("--k must be >= 0")


def _peak_config(args):
    return {"window": args.window, "k": args.k, "min_pmi": args.min_pmi,
            "min_cooccur": args.min_cooccur}


def _peaks(args, w):
    _check_peak_flags(args)
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    expanded, profiles = _profiles(users, lex, args)
    w.write("drunk_expanded.lex", format_lexicon(expanded, declare_size=True))
    rows = [[p.user_id, *(getattr(p, f) for f in PeakProfile.FIELDS)] for p in profiles]
    w.write("peak_profiles.csv", _csv_text(["user_id", *PeakProfile.FIELDS], rows))
    w.write("height_normality.json", _json_text(height_normality_summary(profiles)))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args, **_peak_config(args)), inputs


def _bots(args, w):
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    rows = [[b.user_id, b.drunk_tweet_fraction, str(b.flagged).lower()]
            for b in detect_bots(users, lex["drunk"])]
    w.write("bots.csv", _csv_text(["user_id", "fraction", "flagged"], rows))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args), inputs


def _communities(args, w):
    if not 0.0 <= args.threshold <= 1.0:
        raise UsageError("--threshold must lie in [0, 1]")
    if args.min_common < 1:
        raise UsageError("--min-common must be >= 1")
    lex = _lexicons(args)
    users, inputs = _users(args, lex)
    mode = args.mode
    extra = {"mode": mode}
    if mode == "interest":
        _check_peak_flags(args)
        _, profiles = _profiles(users, lex, args)
        graph = interest_graph(profiles, args.threshold)
        extra.update(threshold=args.threshold, **_peak_config(args))
    else:
        drunk = [u for u in users if u.label is Label.DRUNK]
        graph = bond_graph(drunk, mode, args.min_common)
        extra.update(min_common=args.min_common)
    if not graph.nodes:
        raise DataError("no drunk texters to build a graph from")
    part = louvain(graph, seed=substream_seed(args.seed, "louvain"))
    w.write(f"edges_{mode}.csv", _csv_text(["u", "v", "weight"], graph.edges))
    w.write(f"partition_{mode}.csv",
            _csv_text(["user_id", "community_id"], zip(part.nodes, part.communities)))
    summary = {
        "mode": mode,
        "n_nodes": len(graph.nodes),
        "n_edges": len(graph.edges),
        "n_communities": part.n_communities,
        "sizes": part.sizes(),
        "modularity": part.modularity,
        "modularity_check": modularity(graph, part) if graph.edges else 0.0,
        "history": list(part.history),
        "degree_loglog_slope": degree_loglog_slope(graph),
    }
    w.write(f"communities_{mode}.json", _json_text(summary))
    inputs["lexicons_sha256"] = _lexicon_hash(lex)
    return _base_config(args, **extra), inputs


_HANDLERS = {
    "generate": _generate, "label": _label, "featurize": _featurize,
    "report-categories": _report, "evaluate": _evaluate, "rank": _rank, "peaks": _peaks,
    "bots": _bots, "communities": _communities,
}


# -- argument parsing ----------------------------------------------------------------

def _common_parser():
    p = _Parser(add_help=False)
    g = p.add_argument_group("global")
    g.add_argument("--lexicons", metavar="DIR", help="directory of *.lex files (default: shipped)")
    g.add_argument("--out", metavar="DIR", default="out", help="output directory")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--segment", choices=("weekday", "weekend", "both"), default="both")
    g.add_argument("--corpus", metavar="PATH", help="JSONL corpus")
    g.add_argument("--synthetic", action="store_true", help="generate the corpus in memory")
    s = p.add_argument_group("generator")
    s.add_argument("--n-drunk", type=int, default=278)
    s.add_argument("--n-nondrunk", type=int, default=278)
    s.add_argument("--min-tweets", type=int, default=30)
    s.add_argument("--max-tweets", type=int, default=120)
    s.add_argument("--drunk-token-rate", type=float, default=0.25)
    s.add_argument("--n-random", type=int, default=0)
    s.add_argument("--n-bots", type=int, default=0)
    s.add_argument("--peak-spacing", type=float, default=40.0)
    s.add_argument("--null", action="store_true", help="no cohort signal")
    return p


def _peak_args(p):
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--min-pmi", type=float, default=1.0)
    p.add_argument("--min-cooccur", type=int, default=5)


def build_parser():
    common = _common_parser()
    parser = _Parser(prog="drunktexter", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("generate", parents=[common], help="write a synthetic corpus")
    p = sub.add_parser("label", parents=[common], help="relabel users by drunk-tweet count")
    p.add_argument("--min-drunk-tweets", type=int, default=5)
    sub.add_parser("featurize", parents=[common], help="per-user per-segment feature CSV")
    sub.add_parser("report-categories", parents=[common], help="cohort means per category")
    p = sub.add_parser("evaluate", parents=[common], help="cross-validated classifiers")
    p.add_argument("--classifier", choices=("all",) + tuple(k.value for k in Kind), default="all")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--negative-set", choices=("nondrunk", "random"), default="nondrunk")
    p = sub.add_parser("rank", parents=[common], help="chi-square / information-gain ranking")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--criterion", choices=("chi2", "infogain"), default="chi2")
    p = sub.add_parser("peaks", parents=[common], help="drunk-score peak profiles")
    _peak_args(p)
    sub.add_parser("bots", parents=[common], help="flag accounts that are almost all drunk tweets")
    p = sub.add_parser("communities", parents=[common], help="Louvain communities")
    p.add_argument("--mode", choices=("interest", "friends", "followers"), default="interest")
    p.add_argument("--threshold", type=float, default=0.2)
    p.add_argument("--min-common", type=int, default=1)
    _peak_args(p)
    sub.add_parser("all", parents=[common], help="run every stage into --out")
    return parser


def _stage_argv(args, stage, extra=()):
    """Command line for one stage of ``all``, reading the labeled corpus from --out."""
    out = Path(args.out)
    argv = [stage, "--out", str(out), "--seed", str(args.seed), "--segment", args.segment]
    if args.lexicons:
        argv += ["--lexicons", args.lexicons]
    if stage == "generate":
        argv += ["--n-drunk", str(args.n_drunk), "--n-nondrunk", str(args.n_nondrunk),
                 "--min-tweets", str(args.min_tweets), "--max-tweets", str(args.max_tweets),
                 "--drunk-token-rate", repr(args.drunk_token_rate),
                 "--n-random", str(args.n_random), "--n-bots", str(args.n_bots),
                 "--peak-spacing", repr(args.peak_spacing)]
        if args.null:
            argv.append("--null")
    elif stage == "label":
        argv += ["--corpus", str(args.corpus) if args.corpus else str(out / "corpus.jsonl")]
    else:
        argv += ["--corpus", str(out / "labeled.jsonl")]
    return argv + list(extra)


def all_stage_argvs(args):
    """The stepwise command lines that ``all`` runs, in order."""
    plan = [] if args.corpus and not args.synthetic else [_stage_argv(args, "generate")]
    for stage in ("label", "featurize", "report-categories", "evaluate", "rank", "peaks", "bots"):
        plan.append(_stage_argv(args, stage))
    for mode in ("interest", "friends", "followers"):
        plan.append(_stage_argv(args, "communities", ["--mode", mode]))
    return plan


def _run_all(args):
    stages = []
    for argv in all_stage_argvs(args):
        code = run(argv)
        if code:
            return code
        stages.append(argv[0] if argv[0] != "communities" else f"communities_{argv[-1]}")
    out = Path(args.out)
    tree = {}
    for f in sorted(out.rglob("*")):
        rel = f.relative_to(out).as_posix()
        if f.is_file() and rel != "manifests/all.json":
            tree[rel] = _sha(f.read_bytes())
    body = {"stage": "all", "version": __version__, "seed": args.seed,
            "stages": stages, "outputs": tree}
    (out / "manifests" / "all.json").write_text(_json_text(body), encoding="utf-8")
    return 0


def run(argv=None):
    """Parse ``argv``, run the requested stage and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "all":
            return _run_all(args)
        w = _Writer(args.out)
        config, inputs = _HANDLERS[args.command](args, w)
        w.manifest(args.command, config, inputs)
        return 0
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (DataError, CorpusError, LexiconError, EmptyCorpus, TooFewProfiles, ValueError) as exc:
        print(f"drunktexter: data error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line entry point: build vector sets, answer queries, run
evaluation grids and compute annotator agreement.

Exit codes: 0 success, 2 usage or input-format error, 3 empty query,
4 no valid queries in the dataset.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .evaluation import (
    GridConfig,
    NoValidQueriesError,
    evaluate,
    load_annotations,
    load_queries,
    pairwise_kappa,
)
from .inventory import STRATEGIES, load_inventory
from .preprocessing import load_stopwords
from .ranking import rank
from .store import load_word_embeddings
from .vectorize import (
    ClassProbabilities,
    EmojiVectorSet,
    EmptyQueryError,
    FUSIONS,
    build_emoji_vectors,
    caption_vector,
    compose_query,
    image_vector,
)

ARTIFACT_FORMAT_VERSION = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emojirec",
        description="Knowledge-based emoji recommendation and evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build and persist emoji vector sets")
    _common_inputs(build, inventory_required=True)
    build.add_argument(
        "--strategy",
        action="append",
        choices=STRATEGIES,
        help="knowledge strategy (repeatable; default: all)",
    )
    build.add_argument("--out", required=True, help="output artifact path (JSON)")
    build.set_defaults(func=cmd_build)

    rec = sub.add_parser("recommend", help="rank emojis for a single query")
    _common_inputs(rec, inventory_required=False)
    rec.add_argument("--vectors", help="prebuilt vector-set artifact (from build)")
    rec.add_argument(
        "--strategy", default="senses", choices=STRATEGIES, help="knowledge strategy"
    )
    rec.add_argument(
        "--mode", default="V", type=_mode, choices=("V", "VT"), help="V or VT"
    )
    rec.add_argument("--fusion", default="normalize-add", choices=FUSIONS)
    rec.add_argument("--k", type=int, default=5, help="number of recommendations")
    rec.add_argument("--query", help="JSON file with 'classes' and optional 'caption'")
    rec.add_argument(
        "--class",
        dest="classes",
        action="append",
        metavar="LABEL:PROB",
        help="inline class probability (repeatable)",
    )
    rec.add_argument("--caption", default="", help="inline caption text")
    rec.add_argument("--json", action="store_true", help="machine-readable output")
    rec.set_defaults(func=cmd_recommend)

    ev = sub.add_parser("evaluate", help="run the evaluation grid over a dataset")
    _common_inputs(ev, inventory_required=True)
    ev.add_argument("--queries", required=True, help="labeled query JSONL")
    ev.add_argument(
        "--strategy",
        action="append",
        choices=STRATEGIES,
        help="knowledge strategy (repeatable; default: all)",
    )
    ev.add_argument(
        "--mode",
        action="append",
        type=_mode,
        choices=("V", "VT"),
        help="mode (repeatable; default: V and VT)",
    )
    ev.add_argument(
        "--k",
        action="append",
        type=int,
        help="ranking depth (repeatable; default: 1 and 3)",
    )
    ev.add_argument(
        "--restrict-top",
        type=int,
        metavar="N",
        help="restrict candidates to the N most frequent gold emojis",
    )
    ev.add_argument("--fusion", default="normalize-add", choices=FUSIONS)
    ev.add_argument("--out", required=True, help="report path (writes .json and .csv)")
    ev.set_defaults(func=cmd_evaluate)

    kp = sub.add_parser("kappa", help="pairwise inter-annotator agreement")
    kp.add_argument("--annotations", required=True, help="annotation JSONL")
    kp.set_defaults(func=cmd_kappa)

    return parser


def _common_inputs(sub: argparse.ArgumentParser, inventory_required: bool) -> None:
    sub.add_argument("--embeddings", required=True, help="word-embedding text file")
    sub.add_argument(
        "--inventory", required=inventory_required, help="emoji inventory JSON"
    )
    sub.add_argument("--stopwords", help="override the packaged stopword list")


def _mode(value: str) -> str:
    return value.upper()


def _stopwords(args):
    return load_stopwords(args.stopwords) if args.stopwords else None


def cmd_build(args) -> int:
    store = load_word_embeddings(args.embeddings)
    inventory = load_inventory(args.inventory)
    strategies = tuple(args.strategy) if args.strategy else STRATEGIES
    stopwords = _stopwords(args)
    sets = []
    for strategy in sorted(set(strategies)):
        vs = build_emoji_vectors(store, inventory, strategy, stopwords)
        sets.append(
            {
                "strategy": strategy,
                "vectors": {cp: vec.tolist() for cp, vec in vs.vectors.items()},
                "empty": sorted(cp for cp, flag in vs.empty_flags.items() if flag),
            }
        )
    payload = {
        "format_version": ARTIFACT_FORMAT_VERSION,
        "dimension": store.dimension,
        "sets": sets,
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    Path(args.out).write_text(text, encoding="utf-8")
    print(
        f"wrote {len(inventory)} vectors x {len(sets)} strategies to {args.out}"
    )
    return 0


def load_vector_artifact(path) -> dict[str, EmojiVectorSet]:
    """Read a build artifact back into per-strategy vector sets."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    dimension = int(payload["dimension"])
    out: dict[str, EmojiVectorSet] = {}
    for entry in payload["sets"]:
        empty = set(entry["empty"])
        vs = EmojiVectorSet(strategy=entry["strategy"], dimension=dimension)
        for cp, values in entry["vectors"].items():
            vs.vectors[cp] = np.asarray(values, dtype=np.float64)
            vs.empty_flags[cp] = cp in empty
        out[entry["strategy"]] = vs
    return out


def _read_query(args) -> tuple[ClassProbabilities, str]:
    if args.query:
        with open(args.query, encoding="utf-8") as fh:
            obj = json.load(fh)
        raw = obj.get("classes", [])
        if isinstance(raw, dict):
            classes = ClassProbabilities.from_mapping(raw)
        else:
            classes = ClassProbabilities(
                [(e["label"], e["prob"]) for e in raw]
            )
        return classes, str(obj.get("caption", ""))
    if args.classes:
        pairs = []
        for spec in args.classes:
            label, _, prob = spec.rpartition(":")
            if not label:
                raise ValueError(f"expected LABEL:PROB, got {spec!r}")
            pairs.append((label, float(prob)))
        return ClassProbabilities(pairs), args.caption
    raise ValueError("provide a query via --query FILE or --class LABEL:PROB")


def cmd_recommend(args) -> int:
    if not args.vectors and not args.inventory:
        raise ValueError("either --inventory or --vectors is required")
    store = load_word_embeddings(args.embeddings)
    if args.vectors:
        sets = load_vector_artifact(args.vectors)
        if args.strategy not in sets:
            raise ValueError(
                f"artifact {args.vectors} has no {args.strategy!r} vector set"
            )
        emoji_set = sets[args.strategy]
        if emoji_set.dimension != store.dimension:
            raise ValueError(
                f"artifact dimension {emoji_set.dimension} does not match "
                f"embeddings dimension {store.dimension}"
            )
    else:
        inventory = load_inventory(args.inventory)
        emoji_set = build_emoji_vectors(
            store, inventory, args.strategy, _stopwords(args)
        )

    classes, caption = _read_query(args)
    image = image_vector(store, classes)
    cap = caption_vector(store, caption) if caption else None
    query = compose_query(image, cap, mode=args.mode, fusion=args.fusion)
    ranking = rank(query, emoji_set, args.k)

    if args.json:
        print(
            json.dumps(
                [{"codepoint": cp, "score": score} for cp, score in ranking],
                indent=2,
            )
        )
    else:
        for cp, score in ranking:
            print(f"{cp}\t{score:.6f}")
    return 0


def cmd_evaluate(args) -> int:
    store = load_word_embeddings(args.embeddings)
    inventory = load_inventory(args.inventory)
    queries = load_queries(args.queries)
    if args.restrict_top is not None and args.restrict_top < 1:
        raise ValueError("--restrict-top must be >= 1")
    grid = GridConfig(
        strategies=tuple(args.strategy) if args.strategy else STRATEGIES,
        modes=tuple(args.mode) if args.mode else ("V", "VT"),
        ks=tuple(args.k) if args.k else (1, 3),
        restrict_top=args.restrict_top,
        fusion=args.fusion,
    )
    report = evaluate(queries, store, inventory, grid, _stopwords(args))

    json_path, csv_path = _report_paths(args.out)
    report.write_json(json_path)
    report.write_csv(csv_path)
    for line in report.summary_lines():
        print(line)
    print(f"report written to {json_path} and {csv_path}")
    return 0


def _report_paths(out: str) -> tuple[Path, Path]:
    path = Path(out)
    if path.suffix == ".json":
        return path, path.with_suffix(".csv")
    return Path(str(path) + ".json"), Path(str(path) + ".csv")


def cmd_kappa(args) -> int:
    annotations = load_annotations(args.annotations)
    pairs, mean = pairwise_kappa(annotations)
    print(f"items: {len(annotations.items)}  annotators: {annotations.n_annotators}")
    for (i, j), value in pairs:
        print(f"kappa[{i + 1},{j + 1}] = {value:.4f}")
    print(f"mean = {mean:.4f}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EmptyQueryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NoValidQueriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

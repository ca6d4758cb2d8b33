"""Command-line interface.

Subcommands: extract, train, evaluate, inspect-graph. Exit codes: 0 on
success, 1 for usage errors, 2 for data/model errors. All outputs are
UTF-8 with LF line endings; with a fixed seed in deterministic mode every
command is byte-reproducible.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path

from . import classifier as gnb
from . import evaluation, graph, pipeline, text
from .config import PipelineConfig, make_config, parse_config_file
from .errors import KeywalkError

log = logging.getLogger("keywalk")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _config_flags(parser):
    g = parser.add_argument_group("pipeline configuration")
    g.add_argument("--config", type=Path, help="key=value config file")
    g.add_argument("--window", type=int)
    g.add_argument("--pos", dest="pos_allowed", help="comma-separated POS tags")
    g.add_argument("--max-phrase-len", type=int, dest="max_phrase_len")
    g.add_argument("--walks-per-node", type=int, dest="walks_per_node")
    g.add_argument("--walk-length", type=int, dest="walk_length")
    g.add_argument("--dim", type=int)
    g.add_argument("--context-window", type=int, dest="context_window")
    g.add_argument("--negatives", type=int)
    g.add_argument("--epochs", type=int)
    g.add_argument("--lr", type=float, dest="learning_rate")
    g.add_argument("--var-smoothing", type=float, dest="var_smoothing")
    g.add_argument("--top-k", type=int, dest="top_k")
    g.add_argument("--folds", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--candidate-mode", choices=("subngrams", "maximal"),
                   dest="candidate_mode")
    g.add_argument("--strict-at-k", action="store_const", const=True,
                   dest="strict_at_k")
    g.add_argument("--jobs", type=int)
    g.add_argument("--deterministic", choices=("true", "false"))
    g.add_argument("--verbose", action="store_true")


_CONFIG_KEYS = (
    "window", "pos_allowed", "max_phrase_len", "walks_per_node", "walk_length",
    "dim", "context_window", "negatives", "epochs", "learning_rate",
    "var_smoothing", "top_k", "folds", "seed", "candidate_mode",
    "strict_at_k", "jobs",
)


def _effective_config(args, base: dict | None = None) -> PipelineConfig:
    file_overrides = parse_config_file(args.config) if args.config else {}
    flag_overrides = {}
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            flag_overrides[key] = value
    if args.pos_allowed is not None:
        flag_overrides["pos_allowed"] = tuple(
            t.strip().upper() for t in args.pos_allowed.split(",") if t.strip()
        )
    if args.deterministic is not None:
        flag_overrides["deterministic"] = args.deterministic == "true"
    return make_config(base, file_overrides, flag_overrides)


def _cmd_extract(args) -> int:
    model = gnb.load_model(args.model)
    cfg = _effective_config(args, base=model.config)
    if cfg.dim != model.dim:
        raise KeywalkError(
            f"embedding dim {cfg.dim} does not match model dim {model.dim}"
        )
    doc = text.load_document(args.document)
    for rank, cand in enumerate(pipeline.extract_keyphrases(doc, model, cfg), 1):
        print(f"{rank}\t{' '.join(cand.words)}\t{cand.score:.4f}")
    return 0


def _cmd_train(args) -> int:
    cfg = _effective_config(args)
    corpus = text.load_corpus(args.corpus)
    log.info("training on %d documents", len(corpus))
    model = pipeline.train_model(corpus, cfg)
    gnb.save_model(model, args.output)
    log.info("wrote model to %s", args.output)
    return 0


def _cmd_evaluate(args) -> int:
    cfg = _effective_config(args)
    corpus = text.load_corpus(args.corpus)
    plan = evaluation.make_folds(corpus, cfg.folds, cfg.seed)
    result = evaluation.cross_validate(corpus, cfg, plan)
    tsv_path = Path(f"{args.report}.tsv")
    json_path = Path(f"{args.report}.json")
    buf = io.StringIO()
    evaluation.write_report_tsv(result, buf)
    tsv_path.write_bytes(buf.getvalue().encode("utf-8"))
    evaluation.write_report_json(result, cfg, json_path)
    print(f"P={result.precision:.6f} R={result.recall:.6f} F1={result.f1:.6f}")
    return 0


def _cmd_inspect_graph(args) -> int:
    cfg = _effective_config(args)
    doc = text.load_document(args.document)
    g = pipeline.build_document_graph(doc, cfg)
    for u, v, w in graph.edge_list(g):
        print(f"{u}\t{v}\t{w}")
    stats = graph.graph_stats(g)
    print(
        f"# |V|={stats.num_vertices} |E|={stats.num_edges} "
        f"T={stats.total_weight} max_degree={stats.max_degree}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="keywalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract",
                       help="extract top-k keyphrases from one document")
    p.add_argument("document", type=Path)
    p.add_argument("--model", type=Path, required=True)
    _config_flags(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("train",
                       help="train a ranking model on a gold corpus")
    p.add_argument("corpus", type=Path)
    p.add_argument("output", type=Path)
    _config_flags(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate",
                       help="cross-validated P/R/F1 on a gold corpus")
    p.add_argument("corpus", type=Path)
    p.add_argument("--report", default="report",
                   help="output path prefix for .tsv/.json reports")
    _config_flags(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("inspect-graph",
                       help="dump a document's co-occurrence graph as TSV")
    p.add_argument("document", type=Path)
    _config_flags(p)
    p.set_defaults(func=_cmd_inspect_graph)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except KeywalkError as exc:
        print(f"keywalk: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

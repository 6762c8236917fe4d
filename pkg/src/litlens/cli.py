"""litlens command line: fetch | build | sva | uncertainty | concepts | export | serve.

Configuration resolves in layers: built-in defaults <- config file (JSON)
<- LITLENS_* environment variables <- command-line flags. `--explain` prints
the fully resolved configuration as a valid config file on stdout and the
provenance of every key on stderr, then exits.

Exit codes: 0 success, 1 validation/usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import concepts as concepts_mod
from .corpus import (assemble_corpus, parse_context_sidecar, parse_field_records,
                     parse_month_arg, serialize_contexts, serialize_records)
from .magclient import FetchPlan, build_fos_query, fetch_records
from .snapshot import (PipelineParams, SnapshotStore, export, load_snapshot,
                       run_pipeline, save_snapshot)
from .sva import SvaScores, SvaTable, format_sva_table
from .uncertainty import filter_contexts, parse_lexicons

ENV_PREFIX = "LITLENS_"

CONFIG_DEFAULTS: dict[str, object] = {
    "top_n": 50,
    "context_filter": False,
    "burst_s": 2.0,
    "burst_gamma": 1.0,
    "min_phrase_freq": 2,
    "max_phrase_len": 4,
    "epsilon": 1e-6,
    "harmonic": "raw",
    "lexicon": "",        # path; empty = packaged defaults
    "stopwords": "",      # path; empty = packaged defaults
    "link_template": "",
    "year_min": 1900,
    "year_max": 2100,
    "endpoint": "",
    "credential": "",
    "page_size": 1000,
    "requests_per_minute": 60,
}


class ValidationError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _coerce(key: str, raw: str) -> object:
    default = CONFIG_DEFAULTS[key]
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def resolve_config(config_path: str | None,
                   flag_values: dict[str, object]) -> tuple[dict[str, object], dict[str, str]]:
    """Merge defaults <- config file <- environment <- flags, with provenance."""
    config = dict(CONFIG_DEFAULTS)
    provenance = dict.fromkeys(CONFIG_DEFAULTS, "default")
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config file {config_path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValidationError("config file must hold a JSON object")
        for key, value in loaded.items():
            if key not in CONFIG_DEFAULTS:
                raise ValidationError(f"unknown config key {key!r}")
            config[key] = value
            provenance[key] = f"config:{config_path}"
    for key in CONFIG_DEFAULTS:
        env_key = ENV_PREFIX + key.upper()
        if env_key in os.environ:
            try:
                config[key] = _coerce(key, os.environ[env_key])
            except ValueError as exc:
                raise ValidationError(f"bad value for {env_key}: {exc}") from exc
            provenance[key] = f"env:{env_key}"
    for key, value in flag_values.items():
        if value is not None:
            config[key] = value
            provenance[key] = "flag"
    return config, provenance


def build_params(config: dict[str, object], args: argparse.Namespace) -> PipelineParams:
    lexicons = None
    if config["lexicon"]:
        try:
            with open(str(config["lexicon"]), encoding="utf-8") as fh:
                lexicons = parse_lexicons(fh.read())
        except OSError as exc:
            raise ValidationError(f"cannot read lexicon file: {exc}") from exc
    stopwords = None
    if config["stopwords"]:
        try:
            text = Path(str(config["stopwords"])).read_text("utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot read stopwords file: {exc}") from exc
        stopwords = concepts_mod.parse_stopwords(text)

    def month_of(value: str | None):
        return parse_month_arg(value) if value else None

    try:
        return PipelineParams(
            start=month_of(getattr(args, "from_month", None)),
            end=month_of(getattr(args, "to_month", None)),
            top_n=int(config["top_n"]),
            context_filter=bool(config["context_filter"]),
            burst_s=float(config["burst_s"]),
            burst_gamma=float(config["burst_gamma"]),
            min_phrase_freq=int(config["min_phrase_freq"]),
            max_phrase_len=int(config["max_phrase_len"]),
            epsilon=float(config["epsilon"]),
            harmonic=str(config["harmonic"]),
            sva_from=month_of(getattr(args, "sva_from", None)),
            sva_to=month_of(getattr(args, "sva_to", None)),
            link_template=str(config["link_template"]),
            year_window=(int(config["year_min"]), int(config["year_max"])),
            lexicons=lexicons,
            stopwords=stopwords,
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def load_corpus_dir(path: str, year_window: tuple[int, int]):
    directory = Path(path)
    records_path = directory / "records.txt"
    contexts_path = directory / "contexts.tsv"
    if not records_path.exists():
        raise ValidationError(f"no records.txt under {directory}")
    rec_result = parse_field_records(records_path.read_text("utf-8"), year_window)
    ctx_result = (parse_context_sidecar(contexts_path.read_text("utf-8"))
                  if contexts_path.exists() else None)
    contexts = ctx_result.contexts if ctx_result else []
    corpus, diags = assemble_corpus(rec_result.records, contexts)
    for diag in rec_result.diagnostics + (ctx_result.diagnostics if ctx_result else []) + diags:
        print(f"warning: {diag}", file=sys.stderr)
    if ctx_result:
        print(f"contexts: {ctx_result.raw_count} raw, {ctx_result.unique_count} unique",
              file=sys.stderr)
    return corpus


def make_parser() -> Parser:
    parser = Parser(prog="litlens",
                    description="Co-citation maps, citation-context uncertainty and "
                                "structural variation analysis.")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--explain", action="store_true",
                        help="print resolved config (stdout) and provenance (stderr), then exit")
    sub = parser.add_subparsers(dest="command")

    p_fetch = sub.add_parser("fetch", help="retrieve records from an evaluate endpoint or fixture")
    p_fetch.add_argument("--fos", action="append", required=True,
                         help="field of study (repeatable)")
    p_fetch.add_argument("--out", required=True, help="output corpus directory")
    p_fetch.add_argument("--fixture", help="fixture directory (offline mode)")
    p_fetch.add_argument("--max-pages", type=int, dest="max_pages")
    p_fetch.add_argument("--page-size", type=int, dest="page_size_flag")
    p_fetch.add_argument("--rpm", type=int, dest="rpm_flag")

    p_build = sub.add_parser("build", help="run the full pipeline into a snapshot file")
    p_build.add_argument("--in", dest="input_dir", required=True,
                         help="corpus directory (records.txt + contexts.tsv)")
    p_build.add_argument("--out", required=True, help="snapshot file to write")
    p_build.add_argument("--from", dest="from_month", help="first slice month (YYYY-MM)")
    p_build.add_argument("--to", dest="to_month", help="last slice month (YYYY-MM)")
    p_build.add_argument("--sva-from", dest="sva_from", help="SVA window start (YYYY-MM)")
    p_build.add_argument("--sva-to", dest="sva_to", help="SVA window end (YYYY-MM)")
    p_build.add_argument("--top-n", type=int, dest="top_n_flag")
    p_build.add_argument("--context-filter", action="store_const", const=True,
                         default=None, dest="context_filter_flag",
                         help="drop below-average-cited references per article")
    p_build.add_argument("--lexicon", dest="lexicon_flag", help="cue lexicon file")
    p_build.add_argument("--stopwords", dest="stopwords_flag", help="stopword file")

    p_sva = sub.add_parser("sva", help="print the structural variation ranking")
    p_sva.add_argument("--snapshot", required=True)
    p_sva.add_argument("--from", dest="from_month")
    p_sva.add_argument("--to", dest="to_month")
    p_sva.add_argument("--top", type=int)

    p_unc = sub.add_parser("uncertainty", help="ranked cue/rhetorical context report")
    p_unc.add_argument("--snapshot", required=True)
    p_unc.add_argument("--kind", default="E", choices=("E", "H", "T"))
    p_unc.add_argument("--cues", help="comma-separated cue subset")
    p_unc.add_argument("--rhetorical", help="comma-separated rhetorical terms")
    p_unc.add_argument("--top", type=int)

    p_con = sub.add_parser("concepts", help="print a concept tree")
    p_con.add_argument("--snapshot", required=True)
    group = p_con.add_mutually_exclusive_group(required=True)
    group.add_argument("--cluster", type=int)
    group.add_argument("--ref")
    group.add_argument("--seed")

    p_exp = sub.add_parser("export", help="export a snapshot")
    p_exp.add_argument("--snapshot", required=True)
    p_exp.add_argument("--fmt", required=True, choices=("graphml", "snapshot-doc"))
    p_exp.add_argument("--out", help="output file (default: stdout)")

    p_srv = sub.add_parser("serve", help="serve the read-only API over a snapshot")
    p_srv.add_argument("--snapshot", required=True)
    p_srv.add_argument("--bind", default="127.0.0.1:8000")
    p_srv.add_argument("--static", help="directory of explorer assets to mount at /app")
    p_srv.add_argument("--cors-origin", action="append", dest="cors_origins")

    return parser


def _flag_config_values(args: argparse.Namespace) -> dict[str, object]:
    return {
        "top_n": getattr(args, "top_n_flag", None),
        "context_filter": getattr(args, "context_filter_flag", None),
        "lexicon": getattr(args, "lexicon_flag", None),
        "stopwords": getattr(args, "stopwords_flag", None),
        "page_size": getattr(args, "page_size_flag", None),
        "requests_per_minute": getattr(args, "rpm_flag", None),
    }


def cmd_fetch(args, config) -> int:
    query = build_fos_query(args.fos)
    plan = FetchPlan(page_size=int(config["page_size"]),
                     max_pages=args.max_pages,
                     requests_per_minute=int(config["requests_per_minute"]),
                     mode="fixture" if args.fixture else "live")
    result = fetch_records(query, plan, fixture_dir=args.fixture,
                           endpoint=str(config["endpoint"]) or None,
                           credential=str(config["credential"]))
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "records.txt").write_text(serialize_records(result.records), "utf-8")
    (out / "contexts.tsv").write_text(serialize_contexts(result.contexts), "utf-8")
    print(f"fetched {len(result.records)} records, {len(result.contexts)} contexts "
          f"over {result.pages_fetched} pages -> {out}", file=sys.stderr)
    return 0


def cmd_build(args, config) -> int:
    params = build_params(config, args)
    corpus = load_corpus_dir(args.input_dir, params.year_window)
    snap = run_pipeline(corpus, params)
    save_snapshot(snap, args.out)
    doc = snap.doc
    print(f"snapshot written to {args.out}: {len(doc['records'])} records, "
          f"{len(doc['network']['nodes'])} nodes, {len(doc['network']['edges'])} edges, "
          f"{len(doc['partition']['labels'])} clusters", file=sys.stderr)
    return 0


def _sva_table_from_doc(doc: dict) -> SvaTable:
    rows = [SvaScores(r["id"], r["M"], r["C-L"], r["C-D"], r["Harmonic"],
                      r["Citations"], r["NR"]) for r in doc["sva"]["rows"]]
    return SvaTable(rows, [tuple(s) for s in doc["sva"]["skipped"]], ((0, 0), (0, 0)))


def cmd_sva(args, config) -> int:
    snap = load_snapshot(args.snapshot)
    table = _sva_table_from_doc(snap.doc)
    if args.from_month or args.to_month:
        lo = parse_month_arg(args.from_month) if args.from_month else None
        hi = parse_month_arg(args.to_month) if args.to_month else None
        months = {rec_id: (rec["year"], rec["month"] or 12)
                  for rec_id, rec in snap.doc["records"].items()}
        table.rows = [r for r in table.rows
                      if (lo is None or months.get(r.article_id, (0, 0)) >= lo)
                      and (hi is None or months.get(r.article_id, (9999, 12)) <= hi)]
    print(format_sva_table(table, snap.to_corpus(), args.top))
    if table.skipped:
        print(f"skipped {len(table.skipped)} articles without a usable baseline",
              file=sys.stderr)
    return 0


def cmd_uncertainty(args, config) -> int:
    snap = load_snapshot(args.snapshot)
    store = SnapshotStore(snap)
    cues = [c.strip() for c in args.cues.split(",")] if args.cues else None
    rhetorical = [r.strip() for r in args.rhetorical.split(",")] if args.rhetorical else []
    rows = filter_contexts(store.corpus(), args.kind, rhetorical,
                           snap.params.resolved_lexicons(), cues)
    if args.top:
        rows = rows[:args.top]
    for row in rows:
        print(f"{row.citing_id}->{row.cited_id}\t{row.score:.4f}\t{row.text}")
    return 0


def cmd_concepts(args, config) -> int:
    snap = load_snapshot(args.snapshot)
    store = SnapshotStore(snap)
    tree = store.concept_tree(cluster=args.cluster, ref=args.ref, seed=args.seed)
    print(concepts_mod.format_tree(tree))
    return 0


def cmd_export(args, config) -> int:
    snap = load_snapshot(args.snapshot)
    text = export(snap, args.fmt)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
        print(f"wrote {args.fmt} to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args, config) -> int:
    from .server import serve
    snap = load_snapshot(args.snapshot)
    origins = tuple(args.cors_origins) if args.cors_origins else ("*",)
    serve(snap, bind=args.bind, cors_origins=origins, static_dir=args.static)
    return 0


_COMMANDS = {
    "fetch": cmd_fetch,
    "build": cmd_build,
    "sva": cmd_sva,
    "uncertainty": cmd_uncertainty,
    "concepts": cmd_concepts,
    "export": cmd_export,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        config, provenance = resolve_config(args.config, _flag_config_values(args))
        if args.explain:
            print(json.dumps(config, indent=2, sort_keys=True))
            for key in sorted(provenance):
                print(f"{key}: {provenance[key]}", file=sys.stderr)
            return 0
        if not args.command:
            parser.print_usage(sys.stderr)
            print("litlens: a subcommand is required", file=sys.stderr)
            return 1
        return _COMMANDS[args.command](args, config)
    except ValidationError as exc:
        print(f"litlens: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"litlens: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failures
        print(f"litlens: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

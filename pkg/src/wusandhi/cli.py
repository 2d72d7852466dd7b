"""Command-line entry point: ``wusandhi {segment,phonemize,sandhi,pipeline,eval}``."""

from __future__ import annotations

import argparse
import json
import sys

from . import mos as mos_eval
from .config import load_config
from .emitter import Frontend, dumps_record, pipeline, render_segmentation
from .errors import ConfigError, PipelineError, RatingRowError, WuSandhiError
from .lexicon import nfc
from .phonemizer import render_token
from .sandhi import render_contour

_GROUP_BY = {"speaker": "speaker", "metric": "metric", "sentence": "sentence"}


def _lines(paths):
    if not paths:
        for line in sys.stdin:
            yield line.rstrip("\r\n")
        return
    for path in paths:
        with open(path, encoding="utf-8") as f:
            for line in f:
                yield line.rstrip("\r\n")


def _render_citation(ptokens):
    out = []
    for pt in ptokens:
        if pt.token.is_punct:
            if pt.token.text.strip():
                out.append(pt.token.text.strip())
            continue
        out.append("-".join(s.text + s.tone.contour for s in pt.ipa))
    return " ".join(out)


def _segment_line(fe, text, args):
    ptokens = fe.phonemise(fe.tokens(fe.normalise(text)))
    if args.json:
        return json.dumps(
            [{"text": p.token.text, "origin": p.token.origin.value,
              "rendered": render_token(p, "roman" if args.roman else "ipa")} for p in ptokens],
            ensure_ascii=False,
        )
    return render_segmentation(ptokens, "roman" if args.roman else "ipa")


def _phonemize_line(fe, text, args):
    ptokens = fe.phonemise(fe.tokens(fe.normalise(text)))
    if args.json:
        return json.dumps(
            [{"text": p.token.text,
              "romanisation": [r.text for r in p.roman],
              "ipa": [list(s.segments) for s in p.ipa],
              "tones": [s.tone.category for s in p.ipa]} for p in ptokens],
            ensure_ascii=False,
        )
    return _render_citation(ptokens)


def _sandhi_line(fe, text, args):
    utt = fe.annotate(fe.phonemise(fe.tokens(fe.normalise(text))))
    if args.json:
        return json.dumps(
            [{"syllables": [s.text for s in d.syllables], "has_clitic": d.has_clitic}
             for d in utt.domains],
            ensure_ascii=False,
        )
    return render_contour(utt)


def _pipeline_line(fe, text, args):
    rec = pipeline(text, fe, interleave_blank=args.blank or None)
    if args.contour:
        return rec["contour"]
    return dumps_record(rec)


_HANDLERS = {
    "segment": _segment_line,
    "phonemize": _phonemize_line,
    "sandhi": _sandhi_line,
    "pipeline": _pipeline_line,
}


def run_lines(command, args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        cfg = load_config(args.config, use_hmm=False if args.no_hmm else None,
                          interleave_blank=True if args.blank else None)
        fe = Frontend(cfg)
        fe.lexicon, fe.sandhi_table, fe.clitics  # fail fast on bad tables
    except (ConfigError, OSError, ValueError, WuSandhiError) as exc:
        print(f"wusandhi: config error: {exc}", file=err)
        return 2
    handler = _HANDLERS[command]
    for lineno, line in enumerate(_lines(args.files), start=1):
        text = nfc(line)
        if not text.strip():
            out.write("\n")
            continue
        try:
            out.write(handler(fe, text, args) + "\n")
        except (WuSandhiError, ValueError) as exc:
            stage = exc.stage if isinstance(exc, PipelineError) else command
            cause = exc.cause if isinstance(exc, PipelineError) else exc
            print(f"line {lineno}: [{stage}] {cause}", file=err)
            if command == "pipeline" and not args.contour:
                out.write(dumps_record({"input": line, "error": f"[{stage}] {cause}"}) + "\n")
            else:
                out.write("\n")
    return 0


def run_eval(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        ratings = mos_eval.load_ratings(args.ratings)
    except OSError as exc:
        print(f"wusandhi eval: cannot read {args.ratings}: {exc.strerror}", file=err)
        return 2
    except RatingRowError as exc:
        print(f"wusandhi eval: {args.ratings}: {exc}", file=err)
        return 1
    for p in ratings.dropped:
        print(f"dropped incomplete questionnaire: participant {p}", file=err)
    if not ratings.records:
        print("wusandhi eval: no complete questionnaires", file=err)
        return 1
    group_by = _GROUP_BY[args.by]
    cells = mos_eval.mos(ratings.records, group_by)
    tests = []
    if args.test:
        a, b = (int(x) for x in args.test.split(":"))
        for key in sorted({k[1:] for k in cells}):
            where = dict(zip(mos_eval.GROUPINGS[group_by][1:], key))
            try:
                p = mos_eval.pairwise_test(ratings.records, {"speaker": a, **where}, {"speaker": b, **where})
            except WuSandhiError as exc:
                p = None
                print(f"test {a}:{b} {where}: {exc}", file=err)
            tests.append({"speakers": [a, b], **where, "p": p})
    if args.json:
        json.dump({"group_by": group_by, "confidence": mos_eval.CONFIDENCE,
                   "ci_method": "student-t", "test": "welch-t two-sided",
                   "dropped": ratings.dropped,
                   "cells": mos_eval.cells_to_json(cells, group_by),
                   "tests": tests}, out, ensure_ascii=False)
        out.write("\n")
        return 0
    out.write(mos_eval.format_table(cells, group_by) + "\n")
    for t in tests:
        where = " ".join(f"{k}={v}" for k, v in t.items() if k not in ("speakers", "p"))
        p = "n/a" if t["p"] is None else f"{t['p']:.4g}"
        label = f"speaker {t['speakers'][0]} vs {t['speakers'][1]}"
        out.write(f"{label}{' ' + where if where else ''}: p = {p} (Welch t-test)\n")
    return 0


def _test_pair(value):
    parts = value.split(":")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise argparse.ArgumentTypeError("expected A:B, e.g. 1:2")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="wusandhi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("segment", "word segmentation rendered with -/= joints"),
        ("phonemize", "IPA with citation tones"),
        ("sandhi", "LD domains with surface tones"),
        ("pipeline", "every stage as one JSON record per line"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("files", nargs="*", help="input files (default: stdin)")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--no-hmm", action="store_true", help="disable the HMM fallback")
        p.add_argument("--blank", action="store_true", help="interleave BLANK symbols")
        p.add_argument("--contour", action="store_true", help="print Chao-digit contours only")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--roman", action="store_true", help="romanised rather than IPA rendering")
    p = sub.add_parser("eval", help="MOS tables from a ratings CSV")
    p.add_argument("ratings")
    p.add_argument("--by", choices=sorted(_GROUP_BY), default="speaker")
    p.add_argument("--test", type=_test_pair, help="Welch t-test between speakers A:B per cell")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "eval":
        return run_eval(args)
    return run_lines(args.command, args)


if __name__ == "__main__":
    sys.exit(main())

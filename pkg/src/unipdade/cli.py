"""Command-line front end.

Every command prints one table in text, CSV or JSON. Exit status is 0 on
success, 1 when a verification fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from dataclasses import dataclass, field

from .chainlocal import enumerate_chains
from .cycpoly import CycError
from .genre import (GroupDescriptor, GroupError, MODELS, SERIES, esplit_levis, order_polynomial,
                    relative_weyl)
from .labelcomb import LabelError
from .uniphc import (check_ell, ehc_series, label_core, relative_weyl_with_lambda,
                     unipotent_blocks, unipotent_characters, wreath_irr_degrees)
from .verify import SCHEMA_VERSION, census_summary, dump_json, verify_ctc_cardinality, verify_dade

log = logging.getLogger("unipdade")

LOG_ENV = "UNIPDADE_LOG"


class UsageError(Exception):
    pass


@dataclass
class Table:
    kind: str
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    footer: str = ""

    def to_text(self) -> str:
        cells = [self.columns] + [[str(c) for c in r] for r in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        lines = [self.title]
        for r in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if self.footer:
            lines.append(self.footer)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> str:
        return dump_json({"schema_version": SCHEMA_VERSION, "kind": self.kind, **self.meta,
                          "rows": [dict(zip(self.columns, r)) for r in self.rows]})

    def render(self, fmt: str) -> str:
        return {"text": self.to_text, "csv": self.to_csv, "json": self.to_json}[fmt]()


# ---------------------------------------------------------------- config

@dataclass(frozen=True)
class CliConfig:
    group: GroupDescriptor
    q: int | None
    ell: int | None
    e: int | None
    mode: str
    fmt: str
    output: str | None
    verbosity: int
    jobs: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        group = GroupDescriptor(args.series, args.rank, args.model)
        q, ell = args.q, getattr(args, "ell", None)
        e = getattr(args, "e", None)
        if (q is None) != (ell is None):
            raise UsageError("--q and --ell must be given together")
        if ell is not None:
            derived = check_ell(q, ell)
            if e is not None and e != derived:
                raise UsageError(f"--e {e} contradicts the order of q={q} mod ell={ell}, which is {derived}")
            e = derived
        if e is not None and e < 1:
            raise UsageError("--e must be positive")
        jobs = getattr(args, "jobs", 1)
        if jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return cls(group, q, ell, e, getattr(args, "mode", "per-block"), args.format,
                   args.output, args.verbose, jobs)

    def need_e(self) -> int:
        if self.e is None:
            raise UsageError("give --e, or --q and --ell")
        return self.e

    def need_q_ell(self) -> tuple[int, int]:
        if self.q is None:
            raise UsageError("this command needs --q and --ell")
        return self.q, self.ell

    def meta(self) -> dict:
        g = self.group
        out = {"group": g.name, "series": g.series, "rank": g.rank, "model": g.model}
        for key in ("q", "ell", "e"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


# ---------------------------------------------------------------- commands

def cmd_uch(cfg: CliConfig) -> tuple[Table, int]:
    G = cfg.group
    cols = ["label", "degree"]
    if cfg.q is not None:
        cols += ["degree_at_q", "defect"]
    if cfg.e is not None:
        cols += ["e_core", "e_cuspidal"]
    t = Table("uch", f"unipotent characters of {G.name}", cols, meta=cfg.meta())
    for chi in unipotent_characters(G):
        row = [str(chi.label), str(chi.degree)]
        if cfg.q is not None:
            row += [chi.degree.evaluate_int(cfg.q), chi.defect(cfg.q, cfg.ell)]
        if cfg.e is not None:
            core, w = label_core(G, chi.label, cfg.e)
            row += [str(core), w == 0]
        t.rows.append(row)
    t.footer = f"{len(t.rows)} characters"
    return t, 0


def cmd_series(cfg: CliConfig) -> tuple[Table, int]:
    G, e = cfg.group, cfg.need_e()
    t = Table("series", f"{e}-Harish-Chandra series of {G.name}",
              ["levi", "cuspidal", "relative_weyl", "size", "irr_count", "members"], meta=cfg.meta())
    for pair, chars in sorted(ehc_series(G, e).items(), key=lambda kv: str(kv[0])):
        W = relative_weyl_with_lambda(G, pair)
        n_irr = sum(wreath_irr_degrees(W).values())
        t.rows.append([pair.levi.short(G), str(pair.label), str(W), len(chars), n_irr,
                       " ".join(str(c.label) for c in chars)])
    return t, 0


def cmd_levis(cfg: CliConfig) -> tuple[Table, int]:
    G, e = cfg.group, cfg.need_e()
    cols = ["levi", "order", "relative_weyl"] + (["order_at_q"] if cfg.q is not None else [])
    t = Table("levis", f"{e}-split Levi subgroups of {G.name}", cols, meta=cfg.meta())
    for L in esplit_levis(G, e):
        row = [L.short(G), str(order_polynomial(G, L)), str(relative_weyl(G, L))]
        if cfg.q is not None:
            row.append(order_polynomial(G, L).evaluate_int(cfg.q))
        t.rows.append(row)
    return t, 0


def cmd_chains(cfg: CliConfig) -> tuple[Table, int]:
    G, e = cfg.group, cfg.need_e()
    summary = census_summary(G, e)
    t = Table("chains", f"{e}-chains of {G.name}", ["length", "chain", "stabilizer_wreath_order"],
              meta={**cfg.meta(), "by_length": {str(k): v for k, v in summary["by_length"].items()}})
    for ch in enumerate_chains(G, e):
        t.rows.append([ch.length, ch.render(), ch.stabilizer_wreath_order])
    t.footer = ("by length: " + ", ".join(f"{k}:{v}" for k, v in summary["by_length"].items())
                + f"  total {summary['total']}")
    return t, 0


def cmd_blocks(cfg: CliConfig) -> tuple[Table, int]:
    G = cfg.group
    q, ell = cfg.need_q_ell()
    t = Table("blocks", f"unipotent {ell}-blocks of {G.name} at q={q}",
              ["block", "levi", "d", "k_u", "k_cu", "members"], meta=cfg.meta())
    for blk in unipotent_blocks(G, q, ell):
        for (b, d) in sorted(set(blk.k_u) | set(blk.k_cu), key=lambda k: k[1]):
            members = [str(c.label) for c in blk.characters if c.defect(q, ell) == d]
            t.rows.append([str(b), blk.pair.levi.short(G), d, blk.k_u[(b, d)], blk.k_cu[(b, d)],
                           " ".join(members)])
    return t, 0


def cmd_verify(cfg: CliConfig, which: str):
    q, ell = cfg.need_q_ell()
    if which == "dade":
        rep = verify_dade(cfg.group, q, ell, cfg.mode, cfg.jobs)
    else:
        rep = verify_ctc_cardinality(cfg.group, q, ell, cfg.jobs)
    log.info("%s %s q=%d ell=%d done in %.3fs", which, cfg.group.name, q, ell, rep.seconds)
    return rep, 0 if rep.passed else 1


COMMANDS = {"uch": cmd_uch, "series": cmd_series, "levis": cmd_levis, "chains": cmd_chains,
            "blocks": cmd_blocks}


# ---------------------------------------------------------------- parser

def _group_flags(p: argparse.ArgumentParser, with_e: bool, need_q: bool) -> None:
    p.add_argument("--series", choices=SERIES, required=True)
    p.add_argument("--rank", type=int, required=True,
                   help="n for GL_n/GU_n, m for Sp_2m/SO_2m+1")
    p.add_argument("--model", choices=MODELS, default="sc",
                   help="type A only: sc (SL/SU) or gl (GL/GU)")
    p.add_argument("--q", type=int, required=need_q)
    p.add_argument("--ell", type=int, required=need_q)
    if with_e:
        p.add_argument("--e", type=int, help="period directly, instead of --q/--ell")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--verbose", "-v", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unipdade",
                                     description="Unipotent block counting for finite classical groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_, with_e, need_q in (
            ("uch", "list unipotent characters", False, False),
            ("series", "e-Harish-Chandra series", True, False),
            ("levis", "e-split Levi subgroups", True, False),
            ("chains", "e-chains up to conjugacy", True, False),
            ("blocks", "unipotent blocks by defect", False, True)):
        _group_flags(sub.add_parser(name, help=help_), with_e, need_q)
    ver = sub.add_parser("verify", help="check the counting identities")
    vsub = ver.add_subparsers(dest="check", required=True)
    for name, help_ in (("dade", "alternating sum over chains"),
                        ("ctc", "even versus odd chain counts")):
        p = vsub.add_parser(name, help=help_)
        _group_flags(p, False, True)
        if name == "dade":
            p.add_argument("--mode", choices=("per-block", "aggregate"), default="per-block")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    return parser


def _setup_logging(verbosity: int) -> None:
    level = os.environ.get(LOG_ENV, "").upper() or "WARNING"
    if verbosity:
        level = "DEBUG" if verbosity > 1 else "INFO"
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _setup_logging(args.verbose)
    try:
        cfg = CliConfig.from_args(args)
        if args.command == "verify":
            result, code = cmd_verify(cfg, args.check)
        else:
            result, code = COMMANDS[args.command](cfg)
    except (UsageError, CycError, GroupError, LabelError) as exc:
        print(f"unipdade: error: {exc}", file=sys.stderr)
        return 2
    text = result.render(cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

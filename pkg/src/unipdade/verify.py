"""Both sides of the alternating-sum identity and the orbit-cardinality check."""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .chainlocal import (EChain, census_by_length, cp, delta, enumerate_chains, local_count,
                         m_is_last, transport_check)
from .genre import GroupDescriptor
from .uniphc import BlockId, CountTable, check_ell, unipotent_blocks

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_MISMATCHES = 20


@dataclass
class Row:
    block: BlockId
    d: int
    lhs: int
    rhs: int
    rhs_delta: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs == self.rhs_delta


@dataclass
class VerificationReport:
    kind: str
    group: GroupDescriptor
    q: int
    ell: int
    e: int
    mode: str
    rows: list[Row]
    census: dict[int, int]
    n_triples: int
    issues: list[str] = field(default_factory=list)
    contributions: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.issues and all(r.equal for r in self.rows)

    def mismatches(self) -> list[Row]:
        return [r for r in self.rows if not r.equal][:MAX_MISMATCHES]

    # -- rendering
    def header(self) -> dict:
        return {"check": self.kind, "group": self.group.name, "series": self.group.series,
                "rank": self.group.rank, "model": self.group.model, "q": self.q,
                "ell": self.ell, "e": self.e, "mode": self.mode}

    def to_json_obj(self, timing: bool = False) -> dict:
        obj = {"schema_version": SCHEMA_VERSION, **self.header(),
               "pass": self.passed,
               "census": {str(k): v for k, v in self.census.items()},
               "triples": self.n_triples,
               "issues": self.issues,
               "rows": [{"block": str(r.block), "unipotent": r.block.unipotent, "d": r.d,
                         "lhs": r.lhs, "rhs": r.rhs, "rhs_delta": r.rhs_delta, "equal": r.equal}
                        for r in self.rows]}
        if timing:
            obj["seconds"] = round(self.seconds, 3)
        return obj

    def to_json(self, timing: bool = False) -> str:
        return dump_json(self.to_json_obj(timing))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["block", "unipotent", "d", "lhs", "rhs", "rhs_delta", "equal"])
        for r in self.rows:
            w.writerow([str(r.block), int(r.block.unipotent), r.d, r.lhs, r.rhs, r.rhs_delta, int(r.equal)])
        return buf.getvalue()

    def to_text(self) -> str:
        lhs_name, rhs_name = ("k_u-k_cu", "alt.sum") if self.kind == "dade" else ("CL+", "CL-")
        lines = [f"{self.kind} check  {self.group.name}  q={self.q} ell={self.ell} e={self.e}  mode={self.mode}",
                 "chains by length: " + ", ".join(f"{k}:{v}" for k, v in self.census.items())
                 + f"  triples: {self.n_triples}"]
        lines.append(f"{'block':<24} {'d':>3} {lhs_name:>9} {rhs_name:>9} {'delta':>7}  ok")
        for r in self.rows:
            lines.append(f"{str(r.block):<24} {r.d:>3} {r.lhs:>9} {r.rhs:>9} {r.rhs_delta:>7}  "
                         + ("yes" if r.equal else "NO"))
        for msg in self.issues:
            lines.append(f"issue: {msg}")
        bad = self.mismatches()
        if bad:
            lines.append(f"first {len(bad)} mismatching rows:")
            for r in bad:
                src = self.contributions.get((r.block, r.d), [])
                lines.append(f"  {r.block} d={r.d}: lhs={r.lhs} rhs={r.rhs} delta-path={r.rhs_delta}"
                             + (f"  from {'; '.join(src)}" if src else ""))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"text": self.to_text, "csv": self.to_csv, "json": self.to_json}[fmt]()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- helpers

def _count_job(args) -> CountTable:
    chain, gamma, q, ell = args
    return local_count(chain, gamma, q, ell)


def _local_tables(triples, q, ell, jobs: int) -> list[CountTable]:
    work = [(ch, g, q, ell) for ch, g in triples]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_count_job, work, chunksize=4))
    return [_count_job(w) for w in work]


def _aggregate(table: CountTable) -> CountTable:
    out = CountTable()
    for (b, d), v in table.items():
        out[(BlockId("ALL", "1" if b.unipotent else "*"), d)] += v
    return out


def _lhs(G: GroupDescriptor, q: int, ell: int) -> CountTable:
    # zero entries are kept so that every unipotent (B, d) gets a row
    out = CountTable()
    for blk in unipotent_blocks(G, q, ell):
        out = out.add(blk.k_u).add(blk.k_cu, -1)
    return out


@dataclass
class _Census:
    chains: list[EChain]
    triples: list
    tables: list[CountTable]
    index: dict


def _census(G, q, ell, jobs) -> _Census:
    e = check_ell(q, ell)
    chains = enumerate_chains(G, e)
    triples = [(ch, g) for ch in chains for g in cp(ch)]
    tables = _local_tables(triples, q, ell, jobs)
    index = {(ch.root.key, str(g)): i for i, (ch, g) in enumerate(triples)}
    log.info("%s q=%d ell=%d: %d chains, %d triples", G.name, q, ell, len(chains), len(triples))
    return _Census(chains, triples, tables, index)


def _delta_path(cen: _Census, issues: list[str]) -> CountTable:
    """Right-hand side assuming Delta-pairs cancel: only the trivial-chain fibre is kept.

    Pairs whose two local counts differ are reported, so a failed
    cancellation shows up both here and as a mismatch with the direct sum.
    """
    out = CountTable()
    done = set()
    for i, (ch, g) in enumerate(cen.triples):
        if i in done:
            continue
        partner = delta(ch, g)
        j = cen.index.get((partner.root.key, str(g)))
        if j is None:
            issues.append(f"Delta partner of ({ch}; {g}) missing from census")
            continue
        if j in done or i == j:
            issues.append(f"Delta is not a pairing at ({ch}; {g})")
            continue
        done |= {i, j}
        a, b = (i, j) if ch.length < partner.length else (j, i)
        if cen.tables[a] != cen.tables[b]:
            issues.append(f"Delta pair ({cen.triples[a][0]}; {g}) does not cancel")
        if cen.triples[a][0].length == 0:
            out = out.add(cen.tables[a])
    return out.nonzero()


def _rows(lhs: CountTable, rhs: CountTable, rhs_d: CountTable) -> list[Row]:
    keys = sorted(set(lhs) | set(rhs) | set(rhs_d), key=lambda k: (not k[0].unipotent, k[0].pair, k[0].central, k[1]))
    return [Row(b, d, lhs.get((b, d), 0), rhs.get((b, d), 0), rhs_d.get((b, d), 0)) for b, d in keys]


def _contributions(cen: _Census) -> dict:
    out: dict = {}
    for (ch, g), tab in zip(cen.triples, cen.tables):
        for key, v in tab.items():
            if v:
                out.setdefault(key, []).append(f"{ch} [{g}] x{v}")
    return out


# ---------------------------------------------------------------- public drivers

def verify_dade(G: GroupDescriptor, q: int, ell: int, mode: str = "per-block", jobs: int = 1) -> VerificationReport:
    if mode not in ("per-block", "aggregate"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    e = check_ell(q, ell)
    cen = _census(G, q, ell, jobs)
    issues: list[str] = []
    rhs = CountTable()
    for (ch, _), tab in zip(cen.triples, cen.tables):
        if ch.length > 0:
            rhs = rhs.add(tab, 1 if ch.length % 2 else -1)
    rhs = rhs.nonzero()
    rhs_d = _delta_path(cen, issues)
    lhs = _lhs(G, q, ell)
    for (b, d), v in sorted(rhs.items()):
        if not b.unipotent and v:
            issues.append(f"non-unipotent block {b} has net mass {v} at d={d}")
    if mode == "aggregate":
        lhs, rhs, rhs_d = _aggregate(lhs), _aggregate(rhs), _aggregate(rhs_d)
    rep = VerificationReport("dade", G, q, ell, e, mode, _rows(lhs, rhs, rhs_d),
                             census_by_length(cen.chains), len(cen.triples), issues,
                             _contributions(cen))
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_ctc_cardinality(G: GroupDescriptor, q: int, ell: int, jobs: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    e = check_ell(q, ell)
    cen = _census(G, q, ell, jobs)
    issues: list[str] = []
    plus, minus = CountTable(), CountTable()
    for (ch, g), tab in zip(cen.triples, cen.tables):
        if ch.length % 2 == 0:
            plus = plus.add(tab)
        else:
            minus = minus.add(tab)
        if not m_is_last(ch, g) and not transport_check(ch, g, q, ell):
            issues.append(f"transport fails for ({ch}; {g})")
    plus, minus = plus.nonzero(), minus.nonzero()
    rows = _rows(plus, minus, minus)
    rep = VerificationReport("ctc", G, q, ell, e, "per-block", rows, census_by_length(cen.chains),
                             len(cen.triples), issues, _contributions(cen))
    rep.seconds = time.perf_counter() - t0
    return rep


def census_summary(G: GroupDescriptor, e: int) -> dict:
    chains = enumerate_chains(G, e)
    by_len = census_by_length(chains)
    return {"by_length": by_len,
            "total": sum(by_len.values()),
            "alternating": sum((-1) ** k * v for k, v in by_len.items()),
            "proper_alternating": sum((-1) ** (k + 1) * v for k, v in by_len.items() if k > 0)}

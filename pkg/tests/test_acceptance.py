"""The ten acceptance criteria, one test each, each printing a PASS/FAIL line."""
from __future__ import annotations

import random
import time
from functools import lru_cache
from pathlib import Path

import pytest

from conftest import acceptance_grid
from test_labelcomb import pentagonal_p
from unipdade.chainlocal import delta, local_count, m_is_last, transport_check, triples
from unipdade.cycpoly import CycProduct, cyclotomic_expand, divisors, ell_valuation
from unipdade.genre import GroupDescriptor, order_polynomial
from unipdade.labelcomb import (Partition, count_multipartitions, e_core, e_cores_of_size, partitions,
                                symbols_of_rank)
from unipdade.oracle import oracle_core, oracle_symbols, oracle_valuation
from unipdade.uniphc import (check_ell, ehc_series, relative_weyl_with_lambda, unipotent_characters,
                             wreath_irr_degrees)
from unipdade.verify import verify_ctc_cardinality, verify_dade

GRID = acceptance_grid()
TIME_LIMIT = 60.0
GOLDEN = Path(__file__).parent / "golden" / "dade_A3gl_q2_l3.txt"

ALL_SMALL = ([GroupDescriptor(s, n, m) for s in ("A", "2A") for n in range(1, 5) for m in ("gl", "sc")]
             + [GroupDescriptor(s, n) for s in ("B", "C") for n in range(1, 5)])


def report(capsys, number: int, title: str, failures: list[str]) -> None:
    line = f"criterion {number:2d} {'PASS' if not failures else 'FAIL'}  {title}"
    with capsys.disabled():
        print("\n" + line)
        for f in failures[:10]:
            print(f"    {f}")
    assert not failures, line


@lru_cache(maxsize=None)
def grid_reports():
    out = []
    for G, q, ell in GRID:
        t0 = time.perf_counter()
        dade = verify_dade(G, q, ell)
        ctc = verify_ctc_cardinality(G, q, ell)
        out.append((G, q, ell, dade, ctc, time.perf_counter() - t0))
    return out


def test_criterion_01_cyclotomic_kernel(capsys):
    failures = []
    for n in range(1, 41):
        prod = [1]
        for d in divisors(n):
            c = cyclotomic_expand(d)
            prod = [sum(prod[i] * c[k - i] for i in range(len(prod)) if 0 <= k - i < len(c))
                    for k in range(len(prod) + len(c) - 1)]
        if prod != [-1] + [0] * (n - 1) + [1] or CycProduct.q_to_n_minus_one(n).expand() != prod:
            failures.append(f"product of cyclotomics for n={n}")
    rng = random.Random(20261016)
    pairs = [(q, l) for q in range(2, 30) for l in (3, 5, 7, 11, 13, 17) if q % l]
    for _ in range(1000):
        q, ell = rng.choice(pairs)
        cyc = {rng.randint(1, 30): rng.randint(1, 3) for _ in range(rng.randint(0, 4))}
        p = CycProduct(rng.choice((1, -1)), rng.randint(0, 5), cyc, 0)
        if ell_valuation(p, q, ell) != oracle_valuation(p, q, ell):
            failures.append(f"v_{ell}({p}) at q={q}")
    report(capsys, 1, "cyclotomic kernel: n<=40 products, 1000 random valuations", failures)


def test_criterion_02_label_kernel(capsys):
    failures = []
    for n in range(13):
        for e in range(1, 6):
            total = sum(count_multipartitions((n - g.size) // e, e)
                        for m in range(n % e, n + 1, e) for g in e_cores_of_size(m, e))
            if total != pentagonal_p(n):
                failures.append(f"core/quotient count n={n} e={e}: {total}")
    rng = random.Random(1016)
    for _ in range(500):
        lam = Partition(sorted((rng.randint(1, 7) for _ in range(rng.randint(0, 6))), reverse=True))
        e = rng.randint(1, 5)
        try:
            if oracle_core(lam, e) != e_core(lam, e):
                failures.append(f"core of {lam} e={e}")
        except AssertionError as exc:
            failures.append(f"order dependence for {lam} e={e}: {exc}")
    report(capsys, 2, "label kernel: core/quotient counts n<=12 e<=5, 500 random removals", failures)


def test_criterion_03_unipotent_census(capsys):
    failures = []
    for n in range(1, 7):
        for model in ("gl", "sc"):
            if len(unipotent_characters(GroupDescriptor("A", n, model))) != pentagonal_p(n):
                failures.append(f"#Uch GL{n}.{model}")
    if len(unipotent_characters(GroupDescriptor("C", 2))) != 6:
        failures.append("#Uch Sp4")
    for s in ("B", "C"):
        if len(unipotent_characters(GroupDescriptor(s, 3))) != len(oracle_symbols(3)):
            failures.append(f"#Uch {s}3 against symbol oracle")
    for G in ALL_SMALL:
        for q in (2, 3, 4, 5):
            order = order_polynomial(G).evaluate_int(q)
            for chi in unipotent_characters(G):
                if order % chi.degree.evaluate_int(q):
                    failures.append(f"{chi.label} of {G} at q={q}")
    report(capsys, 3, "unipotent census and degree divisibility", failures)


def test_criterion_04_series_weyl_law(capsys):
    failures = []
    for G in ALL_SMALL:
        for e in range(1, 7):
            for pair, chars in ehc_series(G, e).items():
                W = relative_weyl_with_lambda(G, pair)
                degs = wreath_irr_degrees(W)
                if sum(degs.values()) != len(chars) or sum(d * d * m for d, m in degs.items()) != W.order():
                    failures.append(f"{G} e={e} {pair}: {len(chars)} vs {W}")
    report(capsys, 4, "series sizes equal #Irr of relative Weyl groups (rank<=4, e<=6)", failures)


def test_criterion_05_transport(capsys):
    failures = []
    checked = 0
    for G, q, ell in GRID:
        for ch, g in triples(G, check_ell(q, ell)):
            if m_is_last(ch, g):
                continue
            checked += 1
            if not transport_check(ch, g, q, ell):
                failures.append(f"{G} q={q} ell={ell}: ({ch}; {g})")
    if checked == 0:
        failures.append("no triple was checked")
    report(capsys, 5, f"transport law on {checked} triples", failures)


def test_criterion_06_delta_pairing(capsys):
    failures = []
    seen = set()
    for G, q, ell in GRID:
        e = check_ell(q, ell)
        if (G, e) in seen:
            continue
        seen.add((G, e))
        census = triples(G, e)
        keys = {(ch.root, str(g)) for ch, g in census}
        plus = [(ch, g) for ch, g in census if ch.length % 2 == 0]
        minus = [(ch, g) for ch, g in census if ch.length % 2 == 1]
        images = set()
        for ch, g in plus:
            other = delta(ch, g)
            if abs(other.length - ch.length) != 1 or other.length % 2 != 1:
                failures.append(f"{G} e={e}: delta({ch}; {g}) has length {other.length}")
            if (other.root, str(g)) not in keys:
                failures.append(f"{G} e={e}: delta({ch}; {g}) leaves the census")
            if delta(other, g) != ch:
                failures.append(f"{G} e={e}: delta is not an involution at ({ch}; {g})")
            images.add((other.root, str(g)))
        if len(images) != len(plus) or images != {(ch.root, str(g)) for ch, g in minus}:
            failures.append(f"{G} e={e}: delta is not a bijection of + onto -")
    report(capsys, 6, f"delta pairing on {len(seen)} (group, e) censuses", failures)


def test_criterion_07_alternating_sum(capsys):
    failures = []
    slowest = 0.0
    for G, q, ell, dade, _, seconds in grid_reports():
        slowest = max(slowest, seconds)
        if dade.mode != "per-block" or not dade.passed:
            failures.append(f"{G} q={q} ell={ell}: {dade.issues[:1]} {[str(r.block) for r in dade.mismatches()]}")
        if any(r.rhs != r.rhs_delta for r in dade.rows):
            failures.append(f"{G} q={q} ell={ell}: direct and delta paths differ")
        if seconds > TIME_LIMIT:
            failures.append(f"{G} q={q} ell={ell}: {seconds:.1f}s")
    report(capsys, 7, f"alternating-sum identity per block and defect on {len(GRID)} configurations "
                      f"(slowest {slowest:.2f}s)", failures)


def test_criterion_08_orbit_cardinality(capsys):
    failures = [f"{G} q={q} ell={ell}: {ctc.issues[:1]}"
                for G, q, ell, _, ctc, _ in grid_reports() if not ctc.passed]
    report(capsys, 8, f"even and odd chain counts agree on {len(GRID)} configurations", failures)


def test_criterion_09_non_unipotent_closure(capsys):
    failures = []
    nonunip = 0
    for G, q, ell, dade, _, _ in grid_reports():
        for r in dade.rows:
            if not r.block.unipotent and (r.rhs or r.rhs_delta):
                failures.append(f"{G} q={q} ell={ell}: {r.block} d={r.d} net {r.rhs}")
        for ch, g in triples(G, dade.e):
            nonunip += sum(v for (b, _), v in local_count(ch, g, q, ell).items() if not b.unipotent)
    if nonunip == 0:
        failures.append("no non-unipotent local character was ever produced")
    report(capsys, 9, f"non-unipotent blocks net to zero ({nonunip} local non-unipotent characters)", failures)


def test_criterion_10_golden_worked_example(capsys):
    rep = verify_dade(GroupDescriptor("A", 3, "gl"), 2, 3)
    failures = []
    if rep.to_text() != GOLDEN.read_text():
        failures.append("report text differs from the golden snapshot")
    if rep.census != {0: 1, 1: 1}:
        failures.append(f"chain census {rep.census}")
    report(capsys, 10, "GL3 q=2 ell=3 report matches the golden snapshot", failures)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

"""Unipotent characters, degrees, defects, e-Harish-Chandra series and blocks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Union

from .cycpoly import CycError, CycProduct, multiplicative_order, _is_prime
from .genre import (GroupDescriptor, LeviClass, WreathGroup, _ennola, core_folds,
                    factor_kind, order_polynomial, relative_weyl, unit)
from .labelcomb import (Partition, Symbol, e_core, multipartitions, partitions,
                        symbol_core, symbols_of_rank)

UnipLabel = Union[Partition, Symbol]


# ---------------------------------------------------------------- degrees

def _type_a_degree(lam: Partition) -> CycProduct:
    num = CycProduct.q_power(lam.n_statistic())
    for i in range(1, lam.size + 1):
        num = num * CycProduct.q_to_n_minus_one(i)
    den = CycProduct.one()
    for h in lam.hooks():
        den = den * CycProduct.q_to_n_minus_one(h)
    return num.div_exact(den)


def _symbol_degree(sym: Symbol) -> CycProduct:
    S, T = sym.S, sym.T
    n = sym.rank
    L = len(S) + len(T)
    c = (L - 1) // 2
    num = CycProduct.one()
    for i in range(1, n + 1):
        num = num * CycProduct.q_to_n_minus_one(2 * i)
    for row in (S, T):
        for i, x in enumerate(row):
            for y in row[i + 1:]:
                num = num * CycProduct.q_power(x) * CycProduct.q_to_n_minus_one(y - x)
    for x in S:
        for y in T:
            lo, hi = min(x, y), max(x, y)
            num = num * CycProduct.q_power(lo)
            if hi == lo:
                c -= 1  # q^x + q^x = 2 q^x
            else:
                num = num * CycProduct.q_to_n_plus_one(hi - lo)
    den = CycProduct.q_power(sum((L - 2 * j) * (L - 2 * j - 1) // 2 for j in range(1, L // 2 + 1)))
    for x in S + T:
        for h in range(1, x + 1):
            den = den * CycProduct.q_to_n_minus_one(2 * h)
    if c < 0:
        raise CycError(f"negative two-power for {sym}")
    out = num.div_exact(den)
    return CycProduct(out.sign, out.q_exponent, out.cyc_exponents, c)


def degree_polynomial(G: GroupDescriptor, label: UnipLabel) -> CycProduct:
    if G.is_linear:
        deg = _type_a_degree(Partition(label))
        return _ennola(deg) if G.series == "2A" else deg
    return _symbol_degree(label)


@dataclass(frozen=True)
class UnipChar:
    label: UnipLabel
    degree: CycProduct
    home: GroupDescriptor

    def defect(self, q: int, ell: int) -> int:
        return defect(self, q, ell)

    def to_json(self, q: int | None = None, ell: int | None = None) -> dict:
        out = {"label": str(self.label), "degree": str(self.degree)}
        if q is not None:
            out["degree_at_q"] = self.degree.evaluate_int(q)
        if q is not None and ell is not None:
            out["defect"] = self.defect(q, ell)
        return out


def unipotent_labels(G: GroupDescriptor) -> list[UnipLabel]:
    if G.is_linear:
        return list(partitions(G.rank))
    return symbols_of_rank(G.rank)


def unipotent_characters(G: GroupDescriptor) -> list[UnipChar]:
    return [UnipChar(lab, degree_polynomial(G, lab), G) for lab in unipotent_labels(G)]


def check_ell(q: int, ell: int) -> int:
    """Validate (q, ell) and return e = order of q mod ell."""
    if ell % 2 == 0 or not _is_prime(ell):
        raise CycError(f"ell must be an odd prime, got {ell}")
    if q < 2:
        raise CycError(f"q must be >= 2, got {q}")
    if q % ell == 0:
        raise CycError(f"ell={ell} divides q={q}; ell must be coprime to q")
    return multiplicative_order(q, ell)


def defect(chi: UnipChar, q: int, ell: int) -> int:
    check_ell(q, ell)
    return order_polynomial(chi.home).ell_valuation(q, ell) - chi.degree.ell_valuation(q, ell)


# ---------------------------------------------------------------- cuspidality

def hook_kind(G: GroupDescriptor, e: int) -> tuple[int, str]:
    """(length, kind) of the hooks governing e-Harish-Chandra theory."""
    if G.is_linear:
        return unit(G, e), "rim"
    return (e, "hook") if e % 2 else (e // 2, "cohook")


def label_core(G: GroupDescriptor, label: UnipLabel, e: int) -> tuple[UnipLabel, int]:
    k, kind = hook_kind(G, e)
    if G.is_linear:
        lam = Partition(label)
        core = e_core(lam, k)
        return core, (lam.size - core.size) // k
    return symbol_core(label, k, kind)


def is_e_cuspidal(G: GroupDescriptor, label: UnipLabel, e: int) -> bool:
    return label_core(G, label, e)[1] == 0


@dataclass(frozen=True, order=True)
class CuspidalPair:
    levi: LeviClass
    label: UnipLabel

    @property
    def key(self) -> str:
        return str(self.label)

    def __str__(self) -> str:
        return f"({self.levi.core_rank},{{{','.join(map(str, self.levi.torus_factors))}}};{self.label})"


def core_rank_of(G: GroupDescriptor, label: UnipLabel) -> int:
    return Partition(label).size if G.is_linear else label.rank


def pair_for_core(G: GroupDescriptor, core: UnipLabel, e: int, rank: int | None = None) -> CuspidalPair:
    """Cuspidal pair of the rank-``rank`` group with the given core."""
    rank = G.rank if rank is None else rank
    r = core_rank_of(G, core)
    w = (rank - r) // unit(G, e)
    kind = factor_kind(G, e)
    if core_folds(G, e) and rank == 1:
        levi = LeviClass(1, (), kind, e)  # GL1 is its own torus
    elif core_folds(G, e) and w:
        levi = LeviClass(0, (1,) * w, kind, e)
    else:
        levi = LeviClass(r, (1,) * w, kind, e)
    return CuspidalPair(levi, core)


def ehc_series(G: GroupDescriptor, e: int) -> dict[CuspidalPair, list[UnipChar]]:
    out: dict[CuspidalPair, list[UnipChar]] = {}
    for chi in unipotent_characters(G):
        core, _ = label_core(G, chi.label, e)
        out.setdefault(pair_for_core(G, core, e), []).append(chi)
    return out


def relative_weyl_with_lambda(G: GroupDescriptor, P: CuspidalPair) -> WreathGroup:
    # the unipotent label on the core is fixed by the whole relative Weyl group
    return relative_weyl(G, P.levi)


# ---------------------------------------------------------------- wreath degrees

@lru_cache(maxsize=None)
def syt_count(lam: Partition) -> int:
    """Standard Young tableaux via the hook length formula."""
    return factorial(lam.size) // prod(lam.hooks())


def wreath_labels(c: int, m: int) -> list[tuple[Partition, ...]]:
    return multipartitions(m, c)


def wreath_label_degree(labels: tuple[Partition, ...]) -> int:
    m = sum(p.size for p in labels)
    out = factorial(m)
    for p in labels:
        out = out // factorial(p.size) * syt_count(p)
    return out


def wreath_irr_degrees(W: WreathGroup) -> Counter:
    out: Counter = Counter({1: 1})
    for c, m in W.factors:
        factor = Counter(wreath_label_degree(lab) for lab in wreath_labels(c, m))
        out = _combine(out, factor)
    return out


def _combine(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for x, mx in a.items():
        for y, my in b.items():
            out[x * y] += mx * my
    return out


# ---------------------------------------------------------------- blocks

@dataclass(frozen=True, order=True)
class BlockId:
    pair: str
    central: str = "1"

    @property
    def unipotent(self) -> bool:
        return self.central == "1"

    def __str__(self) -> str:
        return self.pair if self.unipotent else f"{self.pair}*{self.central}"


class CountTable(Counter):
    """(BlockId, defect) -> multiplicity."""

    def add(self, other: "CountTable", sign: int = 1) -> "CountTable":
        out = CountTable(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + sign * v
        return out

    def nonzero(self) -> "CountTable":
        return CountTable({k: v for k, v in self.items() if v})

    def scaled(self, s: int) -> "CountTable":
        return CountTable({k: s * v for k, v in self.items()})


@dataclass
class UnipotentBlock:
    block: BlockId
    pair: CuspidalPair
    characters: list[UnipChar]
    k_u: CountTable
    k_cu: CountTable


def unipotent_blocks(G: GroupDescriptor, q: int, ell: int) -> list[UnipotentBlock]:
    e = check_ell(q, ell)
    out = []
    for pair, chars in sorted(ehc_series(G, e).items(), key=lambda kv: str(kv[0])):
        bid = BlockId(pair.key)
        k_u = CountTable()
        for chi in chars:
            k_u[(bid, defect(chi, q, ell))] += 1
        k_cu = CountTable()
        if pair.levi.is_whole(G):
            k_cu[(bid, defect(chars[0], q, ell))] = 1
        out.append(UnipotentBlock(bid, pair, chars, k_u, k_cu))
    return out

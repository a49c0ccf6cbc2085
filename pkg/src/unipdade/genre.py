"""Ambient groups, their e-split Levi classes, orders and relative Weyl data.

Type A of rank n is the GL_n (``gl``) or SL_n (``sc``) model.  Type 2A is
handled through Ennola duality: it is type A at -q with a modified period.
Types B and C share all data here (orders, symbols, Levi shapes).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import factorial

from .cycpoly import CycProduct
from .labelcomb import Partition, partitions

SERIES = ("A", "2A", "B", "C")
MODELS = ("sc", "gl")


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupDescriptor:
    series: str
    rank: int
    model: str = "sc"

    def __post_init__(self):
        if self.series not in SERIES:
            raise GroupError(f"series must be one of {SERIES}, got {self.series!r}")
        if self.model not in MODELS:
            raise GroupError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.rank < 1:
            raise GroupError("rank must be >= 1")

    @property
    def is_linear(self) -> bool:
        return self.series in ("A", "2A")

    @property
    def name(self) -> str:
        if self.is_linear:
            return f"{self.series}{self.rank}.{self.model}"
        return f"{self.series}{self.rank}"

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------- e-parameters

def ennola_period(e: int) -> int:
    if e % 2:
        return 2 * e
    if e % 4 == 2:
        return e // 2
    return e


def unit(G: GroupDescriptor, e: int) -> int:
    """Rank consumed by one torus factor of size 1."""
    if G.series == "A":
        return e
    if G.series == "2A":
        return ennola_period(e)
    return e if e % 2 else e // 2


def twist_order(G: GroupDescriptor, e: int) -> int:
    """Order c of the cyclic group acting on one torus factor."""
    if G.is_linear:
        return unit(G, e)
    return 2 * e if e % 2 else e


def factor_kind(G: GroupDescriptor, e: int) -> str:
    if G.is_linear:
        k = unit(G, e)
        return "unitary" if G.series == "2A" and k % 2 else "split"
    return "split" if e % 2 else "unitary"


def core_folds(G: GroupDescriptor, e: int) -> bool:
    """True when the core is indistinguishable from torus factors (type A, period 1)."""
    return G.is_linear and unit(G, e) == 1


def torus_modulus(G: GroupDescriptor, e: int, q: int) -> int:
    """Order of the centre of one torus factor."""
    if G.series == "A":
        return q**e - 1
    if G.series == "2A":
        return abs((-q) ** ennola_period(e) - 1)
    return q**e - 1 if e % 2 else q ** (e // 2) + 1


def twist_multiplier(G: GroupDescriptor, e: int, q: int) -> int:
    """Generator of the twist action on torus-factor centres."""
    if G.series == "A":
        return q
    if G.series == "2A":
        return -q
    return -q if e % 2 else q


def center_modulus(G: GroupDescriptor, q: int) -> int:
    """Order of the centre of the connected-centre group (type A), else 1."""
    if G.series == "A":
        return q - 1
    if G.series == "2A":
        return q + 1
    return 1


# ---------------------------------------------------------------- Levi classes

@dataclass(frozen=True, order=True)
class LeviClass:
    core_rank: int
    torus_factors: tuple[int, ...] = ()
    factor_kind: str = "split"
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "torus_factors", tuple(sorted(self.torus_factors, reverse=True)))

    def rank_in(self, G: GroupDescriptor) -> int:
        return self.core_rank + unit(G, self.e) * sum(self.torus_factors)

    def is_whole(self, G: GroupDescriptor) -> bool:
        return not self.torus_factors and self.core_rank == G.rank

    def torus_count(self) -> int:
        return len(self.torus_factors)

    def name(self, G: GroupDescriptor) -> str:
        return f"{G.name} e={self.e} : {factor_names(G, self)}"

    def short(self, G: GroupDescriptor) -> str:
        return factor_names(G, self).replace(" x ", "x")


def _qpow(k: int) -> str:
    return "q" if k == 1 else f"q^{k}"


def factor_names(G: GroupDescriptor, L: LeviClass) -> str:
    e = L.e
    parts = []
    if G.is_linear:
        k = unit(G, e)
        if L.core_rank or not L.torus_factors:
            parts.append(f"{'GU' if G.series == '2A' else 'GL'}{L.core_rank}(q)")
        gname = "GU" if G.series == "2A" and k % 2 else "GL"
        parts += [f"{gname}{a}({_qpow(k)})" for a in L.torus_factors]
    else:
        core = f"Sp{2 * L.core_rank}" if G.series == "C" else f"SO{2 * L.core_rank + 1}"
        parts.append(core)
        if e % 2:
            parts += [f"GL{a}({_qpow(e)})" for a in L.torus_factors]
        else:
            parts += [f"GU{a}({_qpow(e // 2)})" for a in L.torus_factors]
    return " x ".join(parts)


def whole(G: GroupDescriptor, e: int) -> LeviClass:
    return LeviClass(G.rank, (), factor_kind(G, e), e)


def _multisets(total: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in partitions(total)]


def core_options(G: GroupDescriptor, e: int, m: int, is_root: bool) -> list[tuple[int, tuple[int, ...]]]:
    """Ways an e-split Levi of the core of rank m refines: (m', new torus sizes)."""
    k = unit(G, e)
    if core_folds(G, e):
        if not is_root or m == 0:
            return [(m, ())]
        return [(m, ())] + [(0, tuple(p)) for p in partitions(m) if len(p) >= 2]
    out = []
    for used in range(0, m // k + 1):
        for parts in (_multisets(used) if used else [()]):
            out.append((m - k * used, parts))
    return out


def esplit_levis(G: GroupDescriptor, e: int) -> list[LeviClass]:
    if e < 1:
        raise GroupError("e must be positive")
    kind = factor_kind(G, e)
    out = [LeviClass(m, parts, kind, e) for m, parts in core_options(G, e, G.rank, True)]
    return sorted(set(out), key=lambda L: (-L.core_rank, L.torus_factors))


# ---------------------------------------------------------------- orders

def _ennola(p: CycProduct) -> CycProduct:
    cyc: Counter = Counter()
    for d, m in p.cyc_exponents.items():
        if d % 2:
            cyc[2 * d] += m
        elif d % 4 == 2:
            cyc[d // 2] += m
        else:
            cyc[d] += m
    return CycProduct(1, p.q_exponent, dict(cyc), p.two_denominator_exponent)


def gl_order(a: int, k: int = 1) -> CycProduct:
    """|GL_a(q^k)|."""
    out = CycProduct.q_power(k * a * (a - 1) // 2)
    for i in range(1, a + 1):
        out = out * CycProduct.q_to_n_minus_one(k * i)
    return out


def gu_order(a: int, k: int = 1) -> CycProduct:
    """|GU_a(q^k)|."""
    out = CycProduct.q_power(k * a * (a - 1) // 2)
    for i in range(1, a + 1):
        out = out * (CycProduct.q_to_n_minus_one(k * i) if i % 2 == 0
                     else CycProduct.q_to_n_plus_one(k * i))
    return out


def sp_order(m: int) -> CycProduct:
    out = CycProduct.q_power(m * m)
    for i in range(1, m + 1):
        out = out * CycProduct.q_to_n_minus_one(2 * i)
    return out


def order_polynomial(G: GroupDescriptor, L: LeviClass | None = None) -> CycProduct:
    if L is None:
        L = LeviClass(G.rank)
    if G.is_linear:
        k = unit(G, L.e)
        out = gl_order(L.core_rank)
        for a in L.torus_factors:
            out = out * gl_order(a, k)
        if G.series == "2A":
            out = _ennola(out)
        if G.model == "sc":
            out = out.div_exact(CycProduct.phi(1 if G.series == "A" else 2))
        return out
    out = sp_order(L.core_rank)
    for a in L.torus_factors:
        out = out * (gl_order(a, L.e) if L.e % 2 else gu_order(a, L.e // 2))
    return out


# ---------------------------------------------------------------- sub-Levis

def refinement_options(G: GroupDescriptor, L: LeviClass) -> list[tuple[tuple[int, tuple[int, ...]], tuple]]:
    """All refinements of L up to permuting identical factors.

    A refinement is (core choice, sorted tuple of (a, partition of a)).
    """
    e = L.e
    core_opts = core_options(G, e, L.core_rank, L.is_whole(G))
    per_factor = [[(a, tuple(p)) for p in partitions(a)] for a in L.torus_factors]
    seen = set()
    out = []
    for core in core_opts:
        for choice in product(*per_factor):
            key = (core, tuple(sorted(choice, reverse=True)))
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def refined_levi(G: GroupDescriptor, L: LeviClass, option) -> LeviClass:
    (m, fresh), split = option
    parts = list(fresh) + [b for _, p in split for b in p]
    return LeviClass(m, tuple(parts), L.factor_kind, L.e)


def sub_esplit_with_fusion(G: GroupDescriptor, L: LeviClass, e: int | None = None) -> list[tuple[LeviClass, int]]:
    """e-split Levi classes of L, with the number of N_G(L)-classes each splits into."""
    if e is not None and e != L.e:
        raise GroupError("e does not match the Levi class")
    if L not in esplit_levis(G, L.e):
        raise GroupError(f"{L} is not an e-split Levi class of {G}")
    counts: Counter = Counter(refined_levi(G, L, opt) for opt in refinement_options(G, L))
    return sorted(counts.items(), key=lambda kv: (-kv[0].core_rank, kv[0].torus_factors))


# ---------------------------------------------------------------- Weyl data

@dataclass(frozen=True)
class WreathGroup:
    """Direct product of wreath products Z_c wr S_m, stored as sorted (c, m)."""
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted((c, m) for c, m in self.factors if m)))

    def order(self) -> int:
        out = 1
        for c, m in self.factors:
            out *= c**m * factorial(m)
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " x ".join(f"Z{c}wrS{m}" for c, m in self.factors)


def relative_weyl(G: GroupDescriptor, L: LeviClass) -> WreathGroup:
    c = twist_order(G, L.e)
    mult = Counter(L.torus_factors)
    return WreathGroup(tuple((c, k) for k in mult.values()))


@dataclass(frozen=True)
class CentralTorus:
    """Z(L*)^F as cyclic factors; ``quotient`` is the diagonal subgroup removed."""
    factors: tuple[CycProduct, ...]
    quotient: CycProduct | None = None

    def order(self, q: int) -> int:
        out = 1
        for f in self.factors:
            out *= f.evaluate_int(q)
        if self.quotient is not None:
            out //= self.quotient.evaluate_int(q)
        return out


def central_torus(G: GroupDescriptor, L: LeviClass) -> CentralTorus:
    e = L.e
    if G.is_linear:
        k = unit(G, e)
        base = [CycProduct.phi(1)] if L.core_rank else []
        base += [CycProduct.q_to_n_minus_one(k)] * len(L.torus_factors)
        if G.series == "2A":
            base = [_ennola(f) for f in base]
        quot = None
        if G.model == "sc":
            quot = CycProduct.phi(1 if G.series == "A" else 2)
        return CentralTorus(tuple(base), quot)
    f = CycProduct.q_to_n_minus_one(e) if e % 2 else CycProduct.q_to_n_plus_one(e // 2)
    return CentralTorus(tuple([f] * len(L.torus_factors)))

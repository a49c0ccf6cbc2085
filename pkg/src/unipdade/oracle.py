"""Slow, independent reference implementations used to cross-check the fast paths.

Nothing here shares code with the kernels it checks beyond the basic label
and descriptor types.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .cycpoly import CycProduct
from .genre import GroupDescriptor, WreathGroup
from .labelcomb import Partition, Symbol


# ---------------------------------------------------------------- valuations

def _dense_cyclotomic(d: int) -> list[int]:
    # Phi_d = prod_{k | d} (q^{d/k} - 1)^{mu(k)}, done by repeated division of q^d - 1
    num = [-1] + [0] * (d - 1) + [1]
    for k in range(1, d):
        if d % k == 0:
            den = _dense_cyclotomic(k)
            out = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for i in range(len(out) - 1, -1, -1):
                out[i] = rem[i + len(den) - 1]
                for j, c in enumerate(den):
                    rem[i + j] -= out[i] * c
            num = out
    return num


def oracle_valuation(p: CycProduct, q: int, ell: int) -> int:
    """v_ell(p(q)) by expanding to dense form, evaluating and trial division."""
    coeffs = [0] * p.q_exponent + [p.sign]
    for d, m in p.cyc_exponents.items():
        for _ in range(m):
            phi = _dense_cyclotomic(d)
            new = [0] * (len(coeffs) + len(phi) - 1)
            for i, a in enumerate(coeffs):
                for j, b in enumerate(phi):
                    new[i + j] += a * b
            coeffs = new
    value = sum(c * q**i for i, c in enumerate(coeffs))
    assert value % 2**p.two_denominator_exponent == 0
    value = abs(value) // 2**p.two_denominator_exponent
    v = 0
    while value % ell == 0:
        value //= ell
        v += 1
    return v


# ---------------------------------------------------------------- rim hooks

def _cells(lam) -> set[tuple[int, int]]:
    return {(i, j) for i, row in enumerate(lam) for j in range(row)}


def _is_border_strip(cells: set[tuple[int, int]]) -> bool:
    if not cells:
        return False
    if any((i + 1, j) in cells and (i, j + 1) in cells and (i + 1, j + 1) in cells for i, j in cells):
        return False
    start = next(iter(cells))
    seen, todo = {start}, [start]
    while todo:
        i, j = todo.pop()
        for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(cells)


def _sub_partitions(lam: tuple[int, ...], size: int):
    if not lam:
        if size == 0:
            yield ()
        return
    def rec(i, cap, acc, total):
        if i == len(lam):
            if total == size:
                yield tuple(x for x in acc if x)
            return
        for x in range(min(lam[i], cap), -1, -1):
            if total + x <= size:
                yield from rec(i + 1, x, acc + [x], total + x)
    yield from rec(0, lam[0], [], 0)


def rim_hook_removals(lam: tuple[int, ...], e: int) -> list[tuple[int, ...]]:
    n = sum(lam)
    if n < e:
        return []
    big = _cells(lam)
    out = []
    for mu in _sub_partitions(tuple(lam), n - e):
        if _is_border_strip(big - _cells(mu)):
            out.append(mu)
    return out


def oracle_core(lam, e: int) -> Partition:
    """e-core by exhaustive rim-hook removal; asserts order independence."""
    @lru_cache(maxsize=None)
    def cores(mu: tuple[int, ...]) -> frozenset:
        nxt = rim_hook_removals(mu, e)
        if not nxt:
            return frozenset([mu])
        return frozenset().union(*(cores(x) for x in nxt))

    found = cores(tuple(Partition(lam)))
    assert len(found) == 1, f"removal order changes the core: {found}"
    return Partition(next(iter(found)))


# ---------------------------------------------------------------- symbols

def oracle_symbols(n: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Odd-defect reduced symbols of rank n by enumerating pairs of subsets."""
    out = set()
    bound = 2 * n + 2
    for total in range(1, 2 * n + 4, 2):
        for ls in range(total + 1):
            lt = total - ls
            if ls <= lt:
                continue
            for S in combinations(range(bound), ls):
                for T in combinations(range(bound), lt):
                    if S and T and S[0] == 0 and T[0] == 0:
                        continue
                    rank = sum(S) + sum(T) - (total - 1) ** 2 // 4
                    if rank == n:
                        out.add((S, T))
    return out


def _reduce(S, T):
    S, T = sorted(S), sorted(T)
    while S and T and S[0] == 0 and T[0] == 0:
        S = [x - 1 for x in S[1:]]
        T = [x - 1 for x in T[1:]]
    if len(T) > len(S) or (len(T) == len(S) and T > S):
        S, T = T, S
    return tuple(S), tuple(T)


def oracle_symbol_core(sym: Symbol, k: int, kind: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exhaustive hook / cohook removal directly on the two rows."""
    @lru_cache(maxsize=None)
    def cores(S, T) -> frozenset:
        moves = []
        rows = (S, T)
        for r in (0, 1):
            src = rows[r]
            dst = rows[r] if kind == "hook" else rows[1 - r]
            for x in src:
                y = x - k
                if y < 0 or y in dst:
                    continue
                new_src = [v for v in src if v != x]
                if kind == "hook":
                    pair = (new_src + [y], rows[1 - r])
                else:
                    pair = (new_src, list(dst) + [y])
                a, b = (pair if r == 0 else (pair[1], pair[0]))
                moves.append(_reduce(a, b))
        if not moves:
            return frozenset([_reduce(S, T)])
        return frozenset().union(*(cores(*m) for m in moves))

    found = cores(sym.S, sym.T)
    assert len(found) == 1, f"removal order changes the core: {found}"
    return next(iter(found))


# ---------------------------------------------------------------- wreath degrees

@lru_cache(maxsize=None)
def _syt_by_branching(lam: tuple[int, ...]) -> int:
    if sum(lam) <= 1:
        return 1
    total = 0
    for i in range(len(lam)):
        if lam[i] > (lam[i + 1] if i + 1 < len(lam) else 0):
            mu = list(lam)
            mu[i] -= 1
            total += _syt_by_branching(tuple(x for x in mu if x))
    return total


def _all_partitions(n: int, cap: int | None = None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for p in range(min(n, cap), 0, -1):
        for rest in _all_partitions(n - p, p):
            yield (p,) + rest


def _tuples(c: int, m: int):
    if c == 0:
        if m == 0:
            yield ()
        return
    for j in range(m + 1):
        for p in _all_partitions(j):
            for rest in _tuples(c - 1, m - j):
                yield (p,) + rest


def oracle_wreath(W: WreathGroup) -> list[int]:
    degrees = [1]
    for c, m in W.factors:
        local = []
        for tup in _tuples(c, m):
            deg = factorial(m)
            for p in tup:
                deg = deg // factorial(sum(p)) * _syt_by_branching(p)
            local.append(deg)
        degrees = [a * b for a in degrees for b in local]
    return sorted(degrees)


# ---------------------------------------------------------------- chain census

def _unit(G: GroupDescriptor, e: int) -> int:
    if G.series == "A":
        return e
    if G.series == "2A":
        return 2 * e if e % 2 else (e // 2 if e % 4 == 2 else e)
    return e if e % 2 else e // 2


def _set_partitions(items: tuple):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield (frozenset([first]),) + part
        for i in range(len(part)):
            yield part[:i] + (part[i] | {first},) + part[i + 1:]


def oracle_chain_count_small(G: GroupDescriptor, e: int) -> list[tuple]:
    """Chain classes by brute force on labelled torus slots.

    A Levi is (used slots, set partition of the used slots into factors).
    Chains are strictly refining sequences; classes are orbits under all
    permutations of the slots.
    """
    if G.rank > 4:
        raise ValueError("oracle_chain_count_small is limited to rank <= 4")
    k = _unit(G, e)
    fold = G.series in ("A", "2A") and k == 1
    slots = tuple(range(G.rank // k))
    start = (frozenset(), frozenset())

    def children(levi, is_root):
        used, blocks = levi
        free = tuple(s for s in slots if s not in used)
        out = []
        # refine every existing block and add fresh blocks from some free slots
        refinements = [[]]
        for b in sorted(blocks, key=sorted):
            refinements = [r + list(p) for r in refinements for p in _set_partitions(tuple(sorted(b)))]
        for size in range(len(free) + 1):
            for fresh in combinations(free, size):
                if fold and (not is_root and fresh):
                    continue
                if fold and is_root and size and size != len(free):
                    continue
                for fresh_part in _set_partitions(fresh):
                    for ref in refinements:
                        new = (used | frozenset(fresh), frozenset(ref) | frozenset(fresh_part))
                        if new == levi:
                            continue
                        if fold and is_root and len(new[1]) < 2:
                            continue
                        out.append(new)
        return out

    chains = []

    def rec(chain):
        chains.append(tuple(chain))
        for nxt in children(chain[-1], len(chain) == 1):
            rec(chain + [nxt])

    rec([start])

    def encode(chain, perm):
        return tuple((tuple(sorted(perm[s] for s in used)),
                      tuple(sorted(tuple(sorted(perm[s] for s in b)) for b in blocks)))
                     for used, blocks in chain)

    perms = list(permutations(slots))
    classes = {min(encode(ch, p) for p in perms) for ch in chains}
    return sorted(classes, key=lambda c: (len(c), c))

"""Small explicit groups: elements of Z_c wr S_w and exact character degrees.

Character degrees use the Dixon-Schneider method over a prime field F_p with
p = 1 mod exponent(G): common eigenvectors of the class-multiplication
matrices give the central characters, and |G|/chi(1)^2 is read off from
their norm.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import gcd, isqrt
from typing import Hashable, Sequence


@dataclass(frozen=True)
class WreathElement:
    """(perm, twist) in Z_c wr S_w; acts as position i -> perm[i], adding twist[i]."""
    perm: tuple[int, ...]
    twist: tuple[int, ...]
    c: int

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        # apply other first, then self
        perm = tuple(self.perm[j] for j in other.perm)
        twist = tuple((other.twist[i] + self.twist[other.perm[i]]) % self.c
                      for i in range(len(other.perm)))
        return WreathElement(perm, twist, self.c)

    def inverse(self) -> "WreathElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        twist = tuple((-self.twist[inv[i]]) % self.c for i in range(len(inv)))
        return WreathElement(tuple(inv), twist, self.c)

    @classmethod
    def identity(cls, w: int, c: int) -> "WreathElement":
        return cls(tuple(range(w)), (0,) * w, c)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, isqrt(n) + 1))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _nullspace(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} over F_p."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][f]) % p
        basis.append(v)
    return basis


def _solve_coords(basis: list[list[int]], vec: list[int], p: int) -> list[int]:
    """Coordinates of vec in the span of basis (assumed to contain it)."""
    k = len(basis)
    n = len(vec)
    aug = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    sol = _nullspace([row for row in aug], p)
    # pick the solution with last coordinate -1
    for s in sol:
        if s[k] % p:
            inv = pow(-s[k] % p, p - 2, p)
            return [x * inv % p for x in s[:k]]
    raise ArithmeticError("vector not in span")


def _charpoly_roots(X: list[list[int]], p: int) -> list[int]:
    k = len(X)
    # Faddeev-LeVerrier over F_p (p > k)
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    Mi = [[0] * k for _ in range(k)]
    for i in range(1, k + 1):
        XM = [[sum(X[a][t] * Mi[t][b] for t in range(k)) % p for b in range(k)] for a in range(k)]
        Mi = [[(XM[a][b] + (coeffs[k - i + 1] if a == b else 0)) % p for b in range(k)] for a in range(k)]
        XM = [[sum(X[a][t] * Mi[t][b] for t in range(k)) % p for b in range(k)] for a in range(k)]
        tr = sum(XM[a][a] for a in range(k)) % p
        coeffs[k - i] = (-tr * pow(i, p - 2, p)) % p
    roots = []
    for lam in range(p):
        acc = 0
        for cf in reversed(coeffs):
            acc = (acc * lam + cf) % p
        if acc == 0:
            roots.append(lam)
    return roots


def conjugacy_classes(elements: Sequence[Hashable], mul, inv) -> list[list[Hashable]]:
    seen = set()
    classes = []
    for g in elements:
        if g in seen:
            continue
        cls = {mul(mul(x, g), inv(x)) for x in elements}
        seen |= cls
        classes.append(sorted(cls, key=repr))
    return classes


def irr_degrees(elements: Sequence[Hashable], mul, inv, identity) -> list[int]:
    """Sorted irreducible character degrees of the finite group ``elements``."""
    n = len(elements)
    if n == 1:
        return [1]
    classes = conjugacy_classes(elements, mul, inv)
    class_of = {g: i for i, cls in enumerate(classes) for g in cls}
    r = len(classes)
    exponent = 1
    for g in elements:
        k, x = 1, g
        while x != identity:
            x = mul(x, g)
            k += 1
        exponent = _lcm(exponent, k)
    p = exponent + 1
    while not (_is_prime(p) and p > 2 * n):
        p += exponent
    reps = [cls[0] for cls in classes]
    mats = []
    for j, cls in enumerate(classes):
        A = [[0] * r for _ in range(r)]
        for k, gk in enumerate(reps):
            for x in cls:
                A[class_of[mul(inv(x), gk)]][k] += 1
        mats.append([[v % p for v in row] for row in A])
    spaces = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]
    for A in mats:
        if all(len(s) == 1 for s in spaces):
            break
        new = []
        for basis in spaces:
            if len(basis) == 1:
                new.append(basis)
                continue
            images = [[sum(A[i][t] * b[t] for t in range(r)) % p for i in range(r)] for b in basis]
            X_cols = [_solve_coords(basis, img, p) for img in images]
            k = len(basis)
            X = [[X_cols[b][a] for b in range(k)] for a in range(k)]
            for lam in _charpoly_roots(X, p):
                rows = [[(X[a][b] - (lam if a == b else 0)) % p for b in range(k)] for a in range(k)]
                coords = _nullspace(rows, p)
                sub = [[sum(c[t] * basis[t][i] for t in range(k)) % p for i in range(r)] for c in coords]
                if sub:
                    new.append(sub)
        spaces = new
    if any(len(s) != 1 for s in spaces) or len(spaces) != r:
        raise ArithmeticError("eigenspace splitting did not terminate")
    one = class_of[identity]
    inv_class = [class_of[inv(rep)] for rep in reps]
    degrees = []
    for (v,) in spaces:
        scale = pow(v[one], p - 2, p)
        w = [x * scale % p for x in v]
        s = sum(w[i] * w[inv_class[i]] * pow(len(classes[i]), p - 2, p) for i in range(r)) % p
        d2 = n * pow(s, p - 2, p) % p
        d = next(d for d in range(1, isqrt(n) + 1) if d * d % p == d2)
        degrees.append(d)
    if sum(d * d for d in degrees) != n:
        raise ArithmeticError("degree sum check failed")
    return sorted(degrees)


@lru_cache(maxsize=4096)
def wreath_subgroup_degrees(elements: frozenset) -> tuple[int, ...]:
    elems = sorted(elements, key=lambda g: (g.perm, g.twist))
    g0 = elems[0]
    ident = WreathElement.identity(len(g0.perm), g0.c)
    return tuple(irr_degrees(elems, lambda a, b: a * b, lambda a: a.inverse(), ident))


def full_wreath(c: int, w: int) -> list[WreathElement]:
    return [WreathElement(perm, tw, c) for perm in permutations(range(w))
            for tw in product(range(c), repeat=w)]

"""Partitions, beta-sets, cores and quotients; symbols with hooks and cohooks.

Conventions
-----------
* Partitions are weakly decreasing tuples of positive ints, printed ``[3,1]``.
* e-quotients come from a beta-set whose size is padded to a multiple of e,
  so runner ``j`` always holds the beads congruent to ``j`` mod e.
* A symbol ``(S | T)`` is stored shift-reduced (0 is not in both rows).  For
  odd defect the longer row comes first; at equal lengths S >= T.
* Cohooks "move across": an entry x leaves one row and x - k enters the
  other row.  Example with k = 1: ``(0 1 2 | )`` -> move 1 across ->
  ``(0 2 | 0)`` -> reduce -> ``(1 | )``, rank 2 -> rank 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


class LabelError(ValueError):
    pass


# ------------------------------------------------------------------ partitions

class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise LabelError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def hooks(self) -> list[int]:
        conj = self.conjugate()
        return [self[i] - j + conj[j] - i - 1 for i in range(len(self)) for j in range(self[i])]

    def n_statistic(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def beta_set(self, length: int | None = None) -> list[int]:
        r = len(self) if length is None else length
        if r < len(self):
            raise LabelError("beta-set too short")
        parts = list(self) + [0] * (r - len(self))
        return [parts[i] + r - 1 - i for i in range(r)]

    @classmethod
    def from_beta_set(cls, beta) -> "Partition":
        beta = sorted(beta, reverse=True)
        r = len(beta)
        return cls(beta[i] - (r - 1 - i) for i in range(r))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def parse_partition(text: str) -> Partition:
    body = text.strip().strip("[]()")
    return Partition(int(x) for x in body.split(",") if x.strip())


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    out: list[Partition] = []

    def rec(rest: int, cap: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(Partition(acc))
            return
        for p in range(min(rest, cap), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


@lru_cache(maxsize=None)
def count_multipartitions(w: int, k: int) -> int:
    """Number of k-tuples of partitions of total size w."""
    if k == 0:
        return 1 if w == 0 else 0
    return sum(len(partitions(j)) * count_multipartitions(w - j, k - 1) for j in range(w + 1))


def multipartitions(w: int, k: int) -> list[tuple[Partition, ...]]:
    if k == 0:
        return [()] if w == 0 else []
    out = []
    for j in range(w, -1, -1):
        for head in partitions(j):
            for tail in multipartitions(w - j, k - 1):
                out.append((head,) + tail)
    return out


def _abacus_core(beta: list[int], e: int) -> tuple[list[int], int]:
    """Slide every bead up its runner; returns (core beta-set, weight)."""
    runners: dict[int, int] = {}
    for b in beta:
        runners[b % e] = runners.get(b % e, 0) + 1
    core = [j + e * i for j, cnt in runners.items() for i in range(cnt)]
    weight = (sum(beta) - sum(core)) // e
    return core, weight


def e_core_and_quotient(lam: Partition, e: int) -> tuple[Partition, tuple[Partition, ...]]:
    if e < 1:
        raise LabelError("e must be positive")
    lam = Partition(lam)
    r = -(-len(lam) // e) * e
    beta = lam.beta_set(r)
    core, _ = _abacus_core(beta, e)
    quotient = []
    for j in range(e):
        pos = [b // e for b in beta if b % e == j]
        quotient.append(Partition.from_beta_set(pos))
    return Partition.from_beta_set(core), tuple(quotient)


def e_core(lam: Partition, e: int) -> Partition:
    return e_core_and_quotient(lam, e)[0]


def e_weight(lam: Partition, e: int) -> int:
    return (Partition(lam).size - e_core(lam, e).size) // e


def is_e_core(lam: Partition, e: int) -> bool:
    return e_core(lam, e) == Partition(lam)


def e_cores_of_size(m: int, e: int) -> list[Partition]:
    return [lam for lam in partitions(m) if is_e_core(lam, e)]


def from_core_and_quotient(core: Partition, quotient, e: int) -> Partition:
    """Inverse of e_core_and_quotient."""
    core = Partition(core)
    w = sum(Partition(p).size for p in quotient)
    # enough beads that every runner has room for its quotient
    longest = max([len(p) for p in quotient] + [0])
    r = -(-len(core) // e) * e + e * longest
    beta = core.beta_set(r)
    out = []
    for j in range(e):
        runner = sorted((b // e for b in beta if b % e == j), reverse=True)
        parts = list(Partition(quotient[j])) + [0] * (len(runner) - len(quotient[j]))
        if len(parts) > len(runner):
            raise LabelError("runner too short")
        out.extend(j + e * (pos + parts[i]) for i, pos in enumerate(runner))
    lam = Partition.from_beta_set(out)
    assert lam.size == core.size + e * w
    return lam


def partitions_with_core(core: Partition, e: int, w: int) -> list[Partition]:
    core = Partition(core)
    if not is_e_core(core, e):
        raise LabelError(f"{core} is not a {e}-core")
    found = {from_core_and_quotient(core, quo, e) for quo in multipartitions(w, e)}
    return sorted(found, reverse=True)


# ------------------------------------------------------------------ symbols

def _reduce_rows(s, t) -> tuple[tuple[int, ...], tuple[int, ...]]:
    s, t = sorted(s), sorted(t)
    while s and t and s[0] == 0 and t[0] == 0:
        s = [x - 1 for x in s[1:]]
        t = [x - 1 for x in t[1:]]
    s, t = tuple(s), tuple(t)
    if len(t) > len(s) or (len(t) == len(s) and t > s):
        s, t = t, s
    return s, t


@dataclass(frozen=True, order=True)
class Symbol:
    S: tuple[int, ...]
    T: tuple[int, ...]

    @classmethod
    def make(cls, s, t) -> "Symbol":
        for row in (s, t):
            if len(set(row)) != len(row) or any(x < 0 for x in row):
                raise LabelError(f"symbol rows must be distinct non-negative: {s} | {t}")
        return cls(*_reduce_rows(s, t))

    @property
    def defect(self) -> int:
        return abs(len(self.S) - len(self.T))

    @property
    def rank(self) -> int:
        total = len(self.S) + len(self.T)
        return sum(self.S) + sum(self.T) - (total - 1) ** 2 // 4

    def shift(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Unreduced representative with one extra 0 in each row."""
        return (0,) + tuple(x + 1 for x in self.S), (0,) + tuple(x + 1 for x in self.T)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.S)) + " | " + " ".join(map(str, self.T)) + ")"


def parse_symbol(text: str) -> Symbol:
    body = text.strip().strip("()")
    left, right = body.split("|")
    return Symbol.make([int(x) for x in left.split()], [int(x) for x in right.split()])


def symbol_from_bipartition(alpha: Partition, beta: Partition, d: int) -> Symbol:
    """Odd-defect symbol of rank |alpha|+|beta|+(d^2-1)/4 with rows from alpha, beta."""
    k = max(len(alpha) - d, len(beta), 0)
    s = Partition(alpha).beta_set(k + d)
    t = Partition(beta).beta_set(k)
    return Symbol.make(s, t)


def symbol_to_bipartition(sym: Symbol) -> tuple[Partition, Partition]:
    return Partition.from_beta_set(sym.S), Partition.from_beta_set(sym.T)


def symbols_of_rank(n: int, max_defect: int | None = None) -> list[Symbol]:
    """All reduced odd-defect symbols of rank n (defect <= max_defect)."""
    out = []
    d = 1
    while (d * d - 1) // 4 <= n and (max_defect is None or d <= max_defect):
        rest = n - (d * d - 1) // 4
        for j in range(rest, -1, -1):
            for a in partitions(j):
                for b in partitions(rest - j):
                    out.append(symbol_from_bipartition(a, b, d))
        d += 2
    return out


def _cohook_position(x: int, row: int, k: int) -> int:
    a, b = divmod(x, k)
    return (2 * a + (a + row) % 2) * k + b


def _cohook_unposition(p: int, k: int) -> tuple[int, int]:
    q, b = divmod(p, k)
    a, parity = divmod(q, 2)
    row = (parity - a) % 2
    return a * k + b, row


def symbol_core(sym: Symbol, k: int, kind: str = "hook") -> tuple[Symbol, int]:
    """Remove all k-hooks (each row on its own) or all k-cohooks.

    Cohooks are handled on one interleaved abacus where moving x to x - k in
    the other row is a 2k-hook.
    """
    if k < 1:
        raise LabelError("hook length must be positive")
    if kind == "hook":
        cs, ws = _abacus_core(list(sym.S), k)
        ct, wt = _abacus_core(list(sym.T), k)
        return Symbol.make(cs, ct), ws + wt
    if kind == "cohook":
        z = [_cohook_position(x, 0, k) for x in sym.S] + [_cohook_position(x, 1, k) for x in sym.T]
        core, w = _abacus_core(z, 2 * k)
        rows: tuple[list[int], list[int]] = ([], [])
        for p in core:
            x, row = _cohook_unposition(p, k)
            rows[row].append(x)
        return Symbol.make(rows[0], rows[1]), w
    raise LabelError(f"unknown kind {kind!r}")


def symbol_quotient_count(k: int, kind: str) -> int:
    """Number of partitions in the k-(co)quotient of a symbol."""
    return 2 * k

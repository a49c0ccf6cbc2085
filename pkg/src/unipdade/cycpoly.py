"""Signed products of cyclotomic polynomials in an indeterminate q.

A :class:`CycProduct` stands for ``sign * q**a * prod(Phi_d(q)**m_d) / 2**c``.
Everything stays exact: evaluation returns :class:`fractions.Fraction` or
``int`` and valuations are computed from the factored form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping


class CycError(ValueError):
    """Raised on contract violations (inexact division, bad prime, ...)."""


# ---------------------------------------------------------------- dense helpers

def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # den is monic
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    if any(num[:dn]):
        raise CycError("polynomial division is not exact")
    return quot


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def _cyclo(d: int) -> tuple[int, ...]:
    num = [-1] + [0] * (d - 1) + [1]  # q^d - 1
    for k in divisors(d)[:-1]:
        num = _poly_divexact(num, list(_cyclo(k)))
    return tuple(num)


def cyclotomic_expand(d: int) -> list[int]:
    """Coefficients of Phi_d, lowest degree first."""
    if d < 1:
        raise CycError(f"cyclotomic index must be positive, got {d}")
    return list(_cyclo(d))


def poly_eval(coeffs: list[int] | tuple[int, ...], q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc


def multiplicative_order(q: int, ell: int) -> int:
    """Order of q modulo ell (q coprime to ell)."""
    if q % ell == 0:
        raise CycError(f"{ell} divides {q}")
    e, x = 1, q % ell
    while x != 1:
        x = x * q % ell
        e += 1
    return e


def int_valuation(n: int, ell: int) -> int:
    if n == 0:
        raise CycError("valuation of zero")
    n, v = abs(n), 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


# ---------------------------------------------------------------- CycProduct

@dataclass(frozen=True)
class CycProduct:
    sign: int = 1
    q_exponent: int = 0
    cyc_exponents: Mapping[int, int] = field(default_factory=dict)
    two_denominator_exponent: int = 0

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise CycError(f"sign must be +1 or -1, got {self.sign}")
        if self.q_exponent < 0 or self.two_denominator_exponent < 0:
            raise CycError("negative exponent")
        cyc = {}
        for d, m in self.cyc_exponents.items():
            if d < 1 or m < 0:
                raise CycError(f"bad cyclotomic factor Phi_{d}^{m}")
            if m:
                cyc[int(d)] = int(m)
        # frozen dataclass: normalise through object.__setattr__
        object.__setattr__(self, "cyc_exponents", dict(sorted(cyc.items())))

    # equality/hash on the canonical tuple
    def _key(self):
        return (self.sign, self.q_exponent, tuple(self.cyc_exponents.items()),
                self.two_denominator_exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycProduct):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # -- constructors
    @classmethod
    def one(cls) -> "CycProduct":
        return cls()

    @classmethod
    def phi(cls, d: int, m: int = 1) -> "CycProduct":
        return cls(cyc_exponents={d: m})

    @classmethod
    def q_power(cls, a: int) -> "CycProduct":
        return cls(q_exponent=a)

    @classmethod
    def q_to_n_minus_one(cls, n: int) -> "CycProduct":
        """q^n - 1 = prod over d | n of Phi_d."""
        return cls(cyc_exponents={d: 1 for d in divisors(n)})

    @classmethod
    def q_to_n_plus_one(cls, n: int) -> "CycProduct":
        """q^n + 1 = (q^{2n}-1)/(q^n-1)."""
        return cls.q_to_n_minus_one(2 * n).div_exact(cls.q_to_n_minus_one(n))

    # -- arithmetic
    def mul(self, other: "CycProduct") -> "CycProduct":
        cyc = dict(self.cyc_exponents)
        for d, m in other.cyc_exponents.items():
            cyc[d] = cyc.get(d, 0) + m
        return CycProduct(self.sign * other.sign, self.q_exponent + other.q_exponent,
                          cyc, self.two_denominator_exponent + other.two_denominator_exponent)

    __mul__ = mul

    def div_exact(self, other: "CycProduct") -> "CycProduct":
        if other.q_exponent > self.q_exponent:
            raise CycError(f"q-exponent underflow dividing {self} by {other}")
        cyc = dict(self.cyc_exponents)
        for d, m in other.cyc_exponents.items():
            if cyc.get(d, 0) < m:
                raise CycError(f"Phi_{d} underflow dividing {self} by {other}")
            cyc[d] -= m
        # dividing by x/2^c multiplies by 2^c
        c = self.two_denominator_exponent - other.two_denominator_exponent
        if c < 0:
            raise CycError(f"two-denominator underflow dividing {self} by {other}")
        return CycProduct(self.sign * other.sign, self.q_exponent - other.q_exponent, cyc, c)

    __truediv__ = div_exact

    def pow(self, k: int) -> "CycProduct":
        out = CycProduct.one()
        for _ in range(k):
            out = out.mul(self)
        return out

    def degree(self) -> int:
        """Degree in q (Euler totient sum)."""
        return self.q_exponent + sum(len(_cyclo(d)) - 1 for d, m in self.cyc_exponents.items()
                                     for _ in range(m))

    def expand(self) -> list[int]:
        """Dense numerator coefficients (ignores the 2^c denominator)."""
        out = [0] * self.q_exponent + [self.sign]
        for d, m in self.cyc_exponents.items():
            for _ in range(m):
                out = _poly_mul(out, list(_cyclo(d)))
        return out

    # -- evaluation
    def numerator_at(self, q: int) -> int:
        val = self.sign * q**self.q_exponent
        for d, m in self.cyc_exponents.items():
            val *= poly_eval(_cyclo(d), q) ** m
        return val

    def evaluate(self, q: int) -> Fraction:
        if q < 2:
            raise CycError(f"evaluation point must be >= 2, got {q}")
        return Fraction(self.numerator_at(q), 2**self.two_denominator_exponent)

    def evaluate_int(self, q: int) -> int:
        val = self.evaluate(q)
        if val.denominator != 1:
            raise CycError(f"{self} is not integral at q={q}")
        return val.numerator

    def ell_valuation(self, q: int, ell: int) -> int:
        """v_ell of the value at q via the closed cyclotomic rule."""
        if ell % 2 == 0 or not _is_prime(ell):
            raise CycError(f"ell must be an odd prime, got {ell}")
        if q % ell == 0:
            raise CycError(f"ell={ell} divides q={q}")
        e = multiplicative_order(q, ell)
        base = int_valuation(q**e - 1, ell)
        v = 0
        for d, m in self.cyc_exponents.items():
            if d == e:
                v += m * base
            elif d % e == 0:
                k = d // e
                while k % ell == 0:
                    k //= ell
                if k == 1:
                    v += m
        return v

    # -- rendering
    def __str__(self) -> str:
        a = self.q_exponent
        parts = [] if a == 0 else ["q"] if a == 1 else [f"q^{a}"]
        parts += [f"Φ{d}^{m}" if m > 1 else f"Φ{d}" for d, m in self.cyc_exponents.items()]
        body = "·".join(parts) or "1"
        s = ("+" if self.sign > 0 else "-") + body
        c = self.two_denominator_exponent
        if c:
            s += "/2" if c == 1 else f"/2^{c}"
        return s

    def to_json(self) -> dict:
        return {"sign": self.sign, "q_exp": self.q_exponent,
                "cyc": {str(d): m for d, m in self.cyc_exponents.items()},
                "two_denom": self.two_denominator_exponent}

    @classmethod
    def from_json(cls, obj: Mapping) -> "CycProduct":
        return cls(obj["sign"], obj["q_exp"], {int(d): m for d, m in obj["cyc"].items()},
                   obj["two_denom"])


def mul(a: CycProduct, b: CycProduct) -> CycProduct:
    return a.mul(b)


def div_exact(a: CycProduct, b: CycProduct) -> CycProduct:
    return a.div_exact(b)


def evaluate(p: CycProduct, q: int) -> Fraction:
    return p.evaluate(q)


def evaluate_int(p: CycProduct, q: int) -> int:
    return p.evaluate_int(q)


def ell_valuation(p: CycProduct, q: int, ell: int) -> int:
    return p.ell_valuation(q, ell)

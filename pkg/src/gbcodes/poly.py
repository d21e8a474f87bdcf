"""Exact arithmetic in the binary polynomial ring F2[x]/(x^n - 1).

Ring elements are stored as n-bit integer masks (bit i holds the
coefficient of x^i), which keeps addition, rotation, and weight counting
at native-int speed for the ring sizes this package targets (n up to a
few thousand).  Values are immutable; every operation returns a fresh
``CyclicPoly``, so shared instances are safe to use from any number of
threads.

Ordinary (unreduced) polynomials over F2 show up in a few places --
gcds with the modulus, exact divisors of x^n - 1 -- and are passed
around as plain integer masks manipulated with the ``f2_*`` helpers.
"""

from __future__ import annotations

import re
from collections.abc import Iterable

from .errors import NotADivisorError, NotInvertibleError

__all__ = [
    "CyclicPoly",
    "f2_degree",
    "f2_mul",
    "f2_divmod",
    "f2_mod",
    "f2_gcd",
    "f2_gcdext",
    "f2_to_string",
    "gcd_with_modulus",
    "gcd_with_modulus_ext",
    "modulus_quotient",
]


# ---------------------------------------------------------------------------
# Plain F2[x] arithmetic on integer masks (bit i = coefficient of x^i).

def f2_degree(a: int) -> int:
    """Degree of an ordinary F2 polynomial; -1 for the zero polynomial."""
    return a.bit_length() - 1


def f2_mul(a: int, b: int) -> int:
    """Carry-less product of two F2 polynomials."""
    if a < b:
        a, b = b, a
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def f2_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of F2 polynomial division, b != 0."""
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    m, n = f2_degree(a), f2_degree(b)
    if m < n:
        return 0, a
    q = 0
    b <<= m - n
    for i in range(m - n, -1, -1):
        if (a >> (n + i)) & 1:
            a ^= b
            q |= 1 << i
        b >>= 1
    return q, a


def f2_mod(a: int, b: int) -> int:
    return f2_divmod(a, b)[1]


def f2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, f2_mod(a, b)
    return a


def f2_gcdext(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, u, v) with u*a + v*b = g = gcd(a, b)."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = f2_divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 ^ f2_mul(q, u1)
        v0, v1 = v1, v0 ^ f2_mul(q, v1)
    return a, u0, v0


def f2_to_string(mask: int) -> str:
    """Monomial-list rendering of an ordinary F2 polynomial."""
    if mask == 0:
        return "0"
    terms = []
    i = 0
    while mask:
        if mask & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        mask >>= 1
        i += 1
    return "+".join(terms)


_TERM_RE = re.compile(r"^(?:1|x(?:\^(\d+))?)$")


class CyclicPoly:
    """A residue of F2[x]/(x^n - 1) in canonical (degree < n) form."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if n < 1:
            raise ValueError(f"ring length must be positive, got {n}")
        if mask < 0:
            raise ValueError("coefficient mask must be nonnegative")
        # Fold x^(n+i) -> x^i so arbitrary integer input lands in canonical form.
        full = (1 << n) - 1
        acc = 0
        while mask:
            acc ^= mask & full
            mask >>= n
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", acc)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CyclicPoly":
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> "CyclicPoly":
        return cls(n, 1)

    @classmethod
    def from_monomials(cls, n: int, exponents: Iterable[int]) -> "CyclicPoly":
        """Build from a sparse exponent list; repeats cancel (char 2)."""
        mask = 0
        for e in exponents:
            mask ^= 1 << (e % n)
        return cls(n, mask)

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Iterable[int]) -> "CyclicPoly":
        mask = 0
        for i, c in enumerate(coeffs):
            if i >= n:
                raise ValueError("coefficient sequence longer than ring length")
            if c & 1:
                mask |= 1 << i
        return cls(n, mask)

    @classmethod
    def all_ones(cls, n: int) -> "CyclicPoly":
        """The all-ones element 1 + x + ... + x^(n-1)."""
        return cls(n, (1 << n) - 1)

    @classmethod
    def progression(cls, n: int, start: int, step: int, count: int) -> "CyclicPoly":
        """Sum of x^(start + t*step) for t < count; colliding terms cancel."""
        return cls.from_monomials(n, (start + t * step for t in range(count)))

    @classmethod
    def parse(cls, n: int, text: str) -> "CyclicPoly":
        """Parse either a monomial list "1+x^3+x^17" or an n-char bitstring.

        A string made only of 0/1 characters is read as a bitstring
        (index 0 first) when its length equals n; everything else must be
        a '+'-separated monomial list.
        """
        s = text.replace(" ", "")
        if s and set(s) <= {"0", "1"} and len(s) == n:
            return cls.from_coeffs(n, (int(ch) for ch in s))
        if s == "0":
            return cls.zero(n)
        exps = []
        for term in s.split("+"):
            m = _TERM_RE.match(term)
            if not m:
                raise ValueError(f"cannot parse polynomial term {term!r}")
            if term == "1":
                exps.append(0)
            elif m.group(1) is None:
                exps.append(1)
            else:
                exps.append(int(m.group(1)))
        return cls.from_monomials(n, exps)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    @property
    def degree(self) -> int | None:
        """Degree of the canonical representative; None for zero."""
        return None if self.mask == 0 else self.mask.bit_length() - 1

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.mask >> i) & 1)

    def evaluate_at_one(self) -> int:
        return self.weight & 1

    # -- ring operations ----------------------------------------------------

    def _check_ring(self, other: "CyclicPoly") -> None:
        if not isinstance(other, CyclicPoly):
            raise TypeError(f"expected CyclicPoly, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"mismatched ring lengths {self.n} != {other.n}")

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check_ring(other)
        return CyclicPoly(self.n, self.mask ^ other.mask)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check_ring(other)
        n = self.n
        full = (1 << n) - 1
        acc = 0
        m, q = self.mask, other.mask
        while m:
            low = m & -m
            m ^= low
            i = low.bit_length() - 1
            acc ^= ((q << i) | (q >> (n - i))) & full if i else q
        return CyclicPoly(n, acc)

    def shift(self, k: int) -> "CyclicPoly":
        """Multiply by x^k (cyclic rotation of coefficients)."""
        n = self.n
        k %= n
        if k == 0:
            return self
        full = (1 << n) - 1
        return CyclicPoly(n, ((self.mask << k) | (self.mask >> (n - k))) & full)

    def reciprocal(self) -> "CyclicPoly":
        """Substitute x -> x^(-1): coefficient of x^i moves to x^(n-i mod n)."""
        n = self.n
        mask, out = self.mask, 0
        while mask:
            low = mask & -mask
            mask ^= low
            i = low.bit_length() - 1
            out |= 1 << ((n - i) % n)
        return CyclicPoly(n, out)

    def substitute_power(self, s: int) -> "CyclicPoly":
        """Substitute x -> x^s; a ring automorphism when gcd(s, n) = 1.

        The map is total: for non-coprime s, distinct monomials may land
        on the same exponent and cancel.
        """
        n = self.n
        mask, out = self.mask, 0
        while mask:
            low = mask & -mask
            mask ^= low
            i = low.bit_length() - 1
            out ^= 1 << ((s * i) % n)
        return CyclicPoly(n, out)

    def invert(self) -> "CyclicPoly":
        """Multiplicative inverse modulo x^n - 1 via the extended Euclidean
        algorithm on canonical lifts; raises NotInvertibleError if the gcd
        with the modulus is not 1."""
        modulus = (1 << self.n) | 1
        g, u, _ = f2_gcdext(self.mask, modulus)
        if g != 1:
            raise NotInvertibleError(
                f"gcd with x^{self.n}-1 is {f2_to_string(g)}, not 1"
            )
        return CyclicPoly(self.n, u)

    # -- rendering ----------------------------------------------------------

    def to_string(self) -> str:
        return f2_to_string(self.mask)

    def to_bitstring(self) -> str:
        return "".join(str((self.mask >> i) & 1) for i in range(self.n))

    def __repr__(self) -> str:
        return f"CyclicPoly({self.n}, {self.to_string()!r})"

    def __str__(self) -> str:
        return self.to_string()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicPoly)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __bool__(self) -> bool:
        return self.mask != 0


# ---------------------------------------------------------------------------
# Operations against the ring modulus.

def _modulus_mask(n: int) -> int:
    return (1 << n) | 1  # x^n + 1 == x^n - 1 over F2


def gcd_with_modulus(p: CyclicPoly) -> int:
    """gcd of the canonical lift of p and x^n - 1, as an ordinary F2 mask.

    gcd(0, x^n - 1) is x^n - 1 itself.
    """
    return f2_gcd(p.mask, _modulus_mask(p.n))


def gcd_with_modulus_ext(p: CyclicPoly) -> tuple[int, int, int]:
    """Extended variant: (g, u, v) with u*lift(p) + v*(x^n - 1) = g."""
    return f2_gcdext(p.mask, _modulus_mask(p.n))


def modulus_quotient(f: CyclicPoly) -> int:
    """Exact quotient (x^n - 1) / f as an ordinary F2 mask.

    Raises NotADivisorError when the canonical lift of f does not divide
    the modulus.
    """
    if f.mask == 0:
        raise NotADivisorError("zero polynomial does not divide x^n - 1")
    q, r = f2_divmod(_modulus_mask(f.n), f.mask)
    if r != 0:
        raise NotADivisorError(f"{f} does not divide x^{f.n}-1")
    return q

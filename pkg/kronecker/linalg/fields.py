"""Scalar fields used by the exact matrix kernel.

Two fields are supported:
  QQ              the rationals, elements are ``fractions.Fraction``
  PrimeField(p)   integers modulo a prime p, elements are plain ``int`` in [0, p)

Matrices carry their field and route every scalar operation through it, so
one elimination routine serves both exact and randomized computations.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from sympy import isprime

from kronecker.errors import BadPrime

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, int]


@dataclass(frozen=True)
class RationalField:
    """Exact arithmetic over Q."""

    name: str = "QQ"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: object) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)  # type: ignore[arg-type]

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def dot(self, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for x, y in zip(xs, ys):
            if x and y:
                total += x * y
        return total

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-9, 9))

    def to_str(self, a: Fraction) -> str:
        return str(a)


@dataclass(frozen=True)
class PrimeField:
    """Arithmetic modulo a prime. Elements are ints reduced into [0, p)."""

    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2 or not isprime(self.modulus):
            raise BadPrime(f"modulus {self.modulus} is not prime")

    @property
    def name(self) -> str:
        return f"GF({self.modulus})"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def coerce(self, value: object) -> int:
        """Map an int, Fraction or rational string into the field.

        Raises BadPrime when a denominator vanishes modulo p.
        """
        p = self.modulus
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value % p
        frac = value if isinstance(value, Fraction) else Fraction(str(value))
        den = frac.denominator % p
        if den == 0:
            raise BadPrime(f"denominator of {frac} vanishes modulo {p}")
        return (frac.numerator % p) * pow(den, -1, p) % p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def inv(self, a: int) -> int:
        if a % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(xs, ys)) % self.modulus

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.modulus)

    def to_str(self, a: int) -> str:
        return str(a)


QQ = RationalField()

Field = Union[RationalField, PrimeField]


def sampling_field(prime: int, minimum: int) -> PrimeField:
    """Build the prime field used for randomized specialization.

    The modulus must be prime and at least ``minimum`` so the per-trial
    failure bound (degree / p) stays negligible.
    """
    if prime < minimum:
        raise BadPrime(f"sampling prime {prime} is below the minimum {minimum}")
    field = PrimeField(prime)
    logger.debug("Sampling over %s", field.name)
    return field

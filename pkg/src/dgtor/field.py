"""Exact scalar arithmetic: prime fields F_p and arbitrary-precision rationals.

Prime-field elements are plain Python ints kept in [0, p); rationals are
`fractions.Fraction`, which normalizes to lowest terms with positive
denominator on every operation.  A `Field` object owns the operations so
that matrices can verify all their entries share one field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the base set covers all n < 3.3 * 10^24.
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface; concrete fields are PrimeField and RationalField."""

    characteristic: int

    def __call__(self, value):
        return self.normalize(value)

    def normalize(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError


class PrimeField(Field):
    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def normalize(self, value):
        if isinstance(value, Fraction):
            return self.normalize(value.numerator) * self.inv(self.normalize(value.denominator)) % self.p
        return int(value) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.normalize(int(num)), self.normalize(int(den)))
        return self.normalize(int(text))

    def format(self, value) -> str:
        return str(value % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class RationalField(Field):
    __slots__ = ()

    characteristic = 0

    def normalize(self, value):
        return Fraction(value)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def parse(self, text: str):
        return Fraction(text.strip())

    def format(self, value) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("qq")

    def __repr__(self):
        return "Q"


QQ = RationalField()
GF101 = PrimeField(101)


def parse_field(spec: str) -> Field:
    """Parse a CLI/session field spec: ``fp:<p>`` or ``q``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational"):
        return QQ
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise InputError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise InputError(f"bad field spec {spec!r}; expected 'fp:<p>' or 'q'")


def format_field(field: Field) -> str:
    if isinstance(field, PrimeField):
        return f"fp:{field.p}"
    return "q"

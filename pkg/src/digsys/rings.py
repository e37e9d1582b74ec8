"""Exact arithmetic in the supported coefficient rings.

Three rings are available: the rational integers ``Z``, the Gaussian
integers ``ZI`` and the polynomial rings ``Fp(p)`` over a prime field
in the variable ``y``.  All three are Euclidean domains, so "nonzero"
and "not a zero divisor" coincide.  Every ring supplies

* canonical element values (arbitrary-precision ``int``,
  :class:`GaussianInt`, :class:`FpPoly`) whose equality is ring
  equality,
* exact division, a Euclidean value function with value ``-inf`` at 0,
* complete residue systems and canonical division with remainder for
  nonzero non-unit moduli, deterministic across runs,
* a whitespace-insensitive text grammar with ``parse``/``format``
  round-tripping.

All values are immutable and all operations are pure, so they may be
shared freely between threads.
"""

from __future__ import annotations

import functools
import re as _re
from dataclasses import dataclass

from .errors import ParseError

NEG_INF = float("-inf")


def _round_half_down(num: int, den: int) -> int:
    """Nearest integer to num/den with ties toward -infinity; den > 0."""
    return (2 * num + den - 1) // (2 * den)


@dataclass(frozen=True)
class GaussianInt:
    """A Gaussian integer re + im*i."""

    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        return _format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"


def _format_gaussian(a: GaussianInt) -> str:
    if a.im == 0:
        return str(a.re)
    if a.im == 1:
        ipart = "i"
    elif a.im == -1:
        ipart = "-i"
    else:
        ipart = f"{a.im}i"
    if a.re == 0:
        return ipart
    if a.im > 0:
        return f"{a.re}+{ipart}"
    return f"{a.re}{ipart}"


@dataclass(frozen=True)
class FpPoly:
    """A polynomial over F_p in y, coefficients in [0, p), index = degree.

    The empty coefficient tuple is the zero polynomial; otherwise the
    last coefficient is nonzero.
    """

    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, p: int, coeffs) -> FpPoly:
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(p, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: FpPoly) -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other: FpPoly) -> FpPoly:
        self._check(other)
        p = self.p
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        while out and out[-1] == 0:
            out.pop()
        return FpPoly(p, tuple(out))

    def __sub__(self, other: FpPoly) -> FpPoly:
        self._check(other)
        p = self.p
        a, b = self.coeffs, other.coeffs
        la, lb = len(a), len(b)
        out = [
            ((a[i] if i < la else 0) - (b[i] if i < lb else 0)) % p
            for i in range(la if la >= lb else lb)
        ]
        while out and out[-1] == 0:
            out.pop()
        return FpPoly(p, tuple(out))

    def __neg__(self) -> FpPoly:
        # (-c) % p vanishes only at c = 0, so the trim is preserved
        p = self.p
        return FpPoly(p, tuple((-c) % p for c in self.coeffs))

    def __mul__(self, other: FpPoly) -> FpPoly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly(self.p, ())
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    out[i + j] += av * bv
        # the leading entry is a product of nonzero residues mod a prime
        return FpPoly(p, tuple(c % p for c in out))

    def __divmod__(self, other: FpPoly) -> tuple[FpPoly, FpPoly]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        b = other.coeffs
        lb = len(b)
        rem = list(self.coeffs)
        if len(rem) < lb:
            return FpPoly(p, ()), self
        inv = pow(b[-1], -1, p)
        quo = [0] * (len(rem) - lb + 1)
        for i in range(len(quo) - 1, -1, -1):
            c = rem[i + lb - 1] % p
            if c:
                q = (c * inv) % p
                quo[i] = q
                for j in range(lb):
                    rem[i + j] -= q * b[j]
        out = [c % p for c in rem[: lb - 1]]
        while out and out[-1] == 0:
            out.pop()
        return FpPoly(p, tuple(quo)), FpPoly(p, tuple(out))

    def __str__(self) -> str:
        return _format_fp(self)

    def __repr__(self) -> str:
        return f"FpPoly({self.p}, {self.coeffs})"


def _format_fp(a: FpPoly) -> str:
    if not a:
        return "0"
    terms = []
    for k in range(a.degree, -1, -1):
        c = a.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            ypart = "y" if k == 1 else f"y^{k}"
            terms.append(ypart if c == 1 else f"{c}{ypart}")
    return "+".join(terms)


class _Scanner:
    """Whitespace-skipping cursor over a source string."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.skip()

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        self.skip()
        return ch

    def done(self) -> bool:
        return self.pos >= len(self.text)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def integer(self) -> int:
        m = _re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        self.skip()
        return int(m.group())

    def unsigned(self) -> int:
        m = _re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected digits")
        self.pos = m.end()
        self.skip()
        return int(m.group())

    def sign(self) -> int:
        if self.peek() == "+":
            self.take()
            return 1
        if self.peek() == "-":
            self.take()
            return -1
        return 1


class Ring:
    """Interface shared by the three coefficient rings."""

    name: str

    # -- canonical values ------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    # -- arithmetic ------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        """The exact quotient a/b, or None when b does not divide a."""
        raise NotImplementedError

    def euclid_value(self, a):
        """Euclidean value function; -inf at 0."""
        raise NotImplementedError

    # -- residue systems -------------------------------------------------
    def check_modulus(self, m) -> None:
        if self.is_zero(m):
            raise ValueError("zero modulus: the quotient ring is infinite")
        if self.is_unit(m):
            raise ValueError("unit modulus: the quotient ring is trivial")

    def quotient_size(self, m) -> int:
        raise NotImplementedError

    def residues(self, m) -> list:
        """A complete duplicate-free residue system mod m, in a fixed order."""
        raise NotImplementedError

    def canonical_residue(self, a, m) -> tuple:
        """(r, q) with a = r + q*m and r the member of residues(m) congruent to a."""
        raise NotImplementedError

    # -- text ------------------------------------------------------------
    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def sort_key(self, a) -> tuple:
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover
        return self.name


class IntegerRing(Ring):
    name = "Z"

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash(self.name)

    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, int):
            return int(x)
        raise TypeError(f"cannot interpret {x!r} as an integer")

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else None

    def euclid_value(self, a):
        return NEG_INF if a == 0 else abs(a)

    def quotient_size(self, m) -> int:
        self.check_modulus(m)
        return abs(m)

    def residues(self, m) -> list:
        self.check_modulus(m)
        return list(range(abs(m)))

    def canonical_residue(self, a, m) -> tuple:
        self.check_modulus(m)
        r = a % abs(m)
        return r, (a - r) // m

    def parse(self, text: str):
        sc = _Scanner(text)
        value = sc.integer()
        if not sc.done():
            raise sc.error("trailing characters after integer")
        return value

    def format(self, a) -> str:
        return str(a)

    def sort_key(self, a) -> tuple:
        return (a,)


class GaussianIntegerRing(Ring):
    name = "Z[i]"

    def __eq__(self, other) -> bool:
        return isinstance(other, GaussianIntegerRing)

    def __hash__(self) -> int:
        return hash(self.name)

    zero = GaussianInt(0, 0)
    one = GaussianInt(1, 0)

    def coerce(self, x):
        if isinstance(x, GaussianInt):
            return x
        if isinstance(x, int):
            return GaussianInt(int(x), 0)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian integer")

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return a.norm() == 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def exact_div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        num = a * b.conjugate()
        n = b.norm()
        if num.re % n or num.im % n:
            return None
        return GaussianInt(num.re // n, num.im // n)

    def euclid_value(self, a):
        return NEG_INF if not a else a.norm()

    def quotient_size(self, m) -> int:
        self.check_modulus(m)
        return m.norm()

    def residues(self, m) -> list:
        # The box [0, N) x [0, N) with N = norm(m) meets every residue
        # class, since N and N*i both lie in (m); canonicalising and
        # deduplicating it therefore yields a complete system.
        self.check_modulus(m)
        n = m.norm()
        seen = set()
        for a in range(n):
            for b in range(n):
                seen.add(self.canonical_residue(GaussianInt(a, b), m)[0])
        out = sorted(seen, key=lambda g: (g.re, g.im))
        if len(out) != n:
            raise AssertionError("residue enumeration is incomplete")
        return out

    def canonical_residue(self, a, m) -> tuple:
        self.check_modulus(m)
        num = a * m.conjugate()
        n = m.norm()
        q = GaussianInt(_round_half_down(num.re, n), _round_half_down(num.im, n))
        return a - q * m, q

    def parse(self, text: str):
        sc = _Scanner(text)
        total = GaussianInt(0, 0)
        first = True
        while True:
            if sc.done():
                if first:
                    raise sc.error("empty Gaussian integer")
                break
            sign = sc.sign()
            if not first and sign == 1 and sc.peek() not in "0123456789i":
                raise sc.error("expected '+' or '-'")
            if sc.peek() == "i":
                sc.take()
                total = total + GaussianInt(0, sign)
            else:
                mag = sc.unsigned() if sc.peek().isdigit() else None
                if mag is None:
                    raise sc.error("expected digits or 'i'")
                if sc.peek() == "i":
                    sc.take()
                    total = total + GaussianInt(0, sign * mag)
                else:
                    total = total + GaussianInt(sign * mag, 0)
            first = False
        return total

    def format(self, a) -> str:
        return _format_gaussian(a)

    def sort_key(self, a) -> tuple:
        return (a.re, a.im)


class FpPolynomialRing(Ring):
    """Polynomials over the prime field F_p in the variable y."""

    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}[y]"

    def __eq__(self, other) -> bool:
        return isinstance(other, FpPolynomialRing) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    @property
    def zero(self):
        return FpPoly(self.p, ())

    @property
    def one(self):
        return FpPoly(self.p, (1,))

    def coerce(self, x):
        if isinstance(x, FpPoly):
            if x.p != self.p:
                raise TypeError("mixed characteristics")
            return x
        if isinstance(x, int):
            return FpPoly.make(self.p, (x,))
        raise TypeError(f"cannot interpret {x!r} as a polynomial over F_{self.p}")

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return a.degree == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def exact_div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if not r else None

    def euclid_value(self, a):
        return NEG_INF if not a else a.degree

    def quotient_size(self, m) -> int:
        self.check_modulus(m)
        return self.p ** m.degree

    def residues(self, m) -> list:
        self.check_modulus(m)
        d = m.degree
        out = []
        for idx in range(self.p**d):
            coeffs = []
            v = idx
            for _ in range(d):
                v, c = divmod(v, self.p)
                coeffs.append(c)
            out.append(FpPoly.make(self.p, coeffs))
        return out

    def canonical_residue(self, a, m) -> tuple:
        self.check_modulus(m)
        q, r = divmod(a, m)
        return r, q

    def parse(self, text: str):
        sc = _Scanner(text)
        total = self.zero
        first = True
        while True:
            if sc.done():
                if first:
                    raise sc.error("empty polynomial")
                break
            sign = sc.sign()
            if not first and sign == 1 and sc.peek() not in "0123456789y":
                raise sc.error("expected '+' or '-'")
            coeff = 1
            have_coeff = False
            if sc.peek().isdigit():
                at = sc.pos
                coeff = sc.unsigned()
                have_coeff = True
                if coeff >= self.p:
                    raise ParseError(
                        f"coefficient {coeff} out of range for F_{self.p}", sc.text, at
                    )
                if sc.peek() == "*":
                    sc.take()
            if sc.peek() == "y":
                sc.take()
                k = 1
                if sc.peek() == "^":
                    sc.take()
                    k = sc.unsigned()
                term = FpPoly.make(self.p, [0] * k + [coeff])
            elif have_coeff:
                term = FpPoly.make(self.p, (coeff,))
            else:
                raise sc.error("expected a coefficient or 'y'")
            total = total + term if sign > 0 else total - term
            first = False
        return total

    def format(self, a) -> str:
        return _format_fp(a)

    def sort_key(self, a) -> tuple:
        return (a.degree, a.coeffs)


Z = IntegerRing()
ZI = GaussianIntegerRing()


@functools.lru_cache(maxsize=None)
def Fp(p: int) -> FpPolynomialRing:
    return FpPolynomialRing(p)


def ring_from_name(name: str) -> Ring:
    """Resolve a CLI ring name: Z, Zi, or Fp:<prime>."""
    flat = name.strip()
    if flat.lower() == "z":
        return Z
    if flat.lower() in ("zi", "z[i]"):
        return ZI
    if flat.lower().startswith("fp:"):
        return Fp(int(flat[3:]))
    raise ValueError(f"unknown ring {name!r}; expected Z, Zi or Fp:<p>")

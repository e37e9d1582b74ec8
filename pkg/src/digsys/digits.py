"""Digit systems (R, X, N) and the backward-division dynamics.

A digit system couples the quotient ring R = E[x]/(P) with a digit set
N that represents every residue class of R modulo the base X exactly
once; membership is decided by the constant coefficients alone.  The
central map sends A to (A - digit(A)) / X, and iterating it produces
the digit sequence of A.  An element has a finite base-X expansion
exactly when some iterate reaches 0.

The classification of orbits declares "finite" at the first arrival at
0 even when 0 is not itself a digit; the raw digit stream (which keeps
running through the cycle of 0) is available separately via
:meth:`DigitSystem.digit_stream`.

Digit systems are immutable after validation; orbit walks from
different start elements are independent and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError
from .polyquot import Poly, QuotElem, QuotRing
from .rings import Ring

DEFAULT_STEP_CAP = 10**6


@dataclass(frozen=True)
class DigitSequence:
    """Digit string of an element plus the orbit classification.

    kind is "finite" (steps = minimal n with n-th iterate 0),
    "eventually-periodic" (preperiod, period of the orbit) or
    "unknown" when the cap ran out first.  ``digits`` holds the first
    ``steps`` digits for finite orbits and preperiod + period digits
    for eventually periodic ones.
    """

    digits: tuple
    kind: str
    steps: int | None = None
    preperiod: int | None = None
    period: int | None = None
    cap: int | None = None


@dataclass(frozen=True)
class Expansion:
    """Outcome of asking for a finite base-X expansion."""

    status: str  # "finite" | "proven-non-finite" | "unknown"
    digits: tuple | None
    steps: int
    period: int | None = None


@dataclass(frozen=True)
class ZeroCycle:
    """A shortest digit string summing to 0; its length is the zero period."""

    digits: tuple

    @property
    def period(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class PeriodicSetReport:
    """Purely periodic elements reachable from the given seeds."""

    elements: frozenset
    orbits: tuple
    contains_zero: bool
    capped: bool


class DigitSystem:
    """A validated digit system; build via :func:`validate_system`."""

    def __init__(self, qring: QuotRing, digits: tuple, _lookup: dict):
        self.qring = qring
        self.ring = qring.ring
        self.modulus = qring.modulus
        self.digits = digits
        self._lookup = _lookup
        self.digits_constant = all(d.x_degree <= 0 for d in digits)
        self.k = max(self.qring.d, max((d.x_degree for d in digits), default=0))

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"DigitSystem({self.ring.name}, {self.modulus}, "
            f"{{{', '.join(self.qring.format(d) for d in self.digits)}}})"
        )

    @property
    def zero(self) -> QuotElem:
        return self.qring.zero

    def constant_digits(self) -> tuple:
        if not self.digits_constant:
            raise ValueError("digit set is not constant in x")
        return tuple(d.constant for d in self.digits)

    # -- the dynamics ---------------------------------------------------

    def digit_of(self, a: QuotElem) -> QuotElem:
        """The unique digit congruent to ``a`` modulo the base."""
        key = self.ring.canonical_residue(a.constant, self.qring.p0)[0]
        return self._lookup[key]

    def step(self, a: QuotElem) -> QuotElem:
        """One backward-division step (A - digit(A)) / X."""
        return self.qring.divide_by_x(a - self.digit_of(a))

    def digit_stream(self, a: QuotElem) -> Iterator[QuotElem]:
        """The raw, unbounded digit stream of ``a``."""
        cur = a
        while True:
            d = self.digit_of(cur)
            yield d
            cur = self.qring.divide_by_x(cur - d)

    def digit_sequence(self, a: QuotElem, cap: int = DEFAULT_STEP_CAP) -> DigitSequence:
        if cap < 1:
            raise ValueError("cap must be at least 1")
        seen: dict[QuotElem, int] = {}
        digits: list[QuotElem] = []
        cur = a
        n = 0
        while True:
            if cur.is_zero:
                return DigitSequence(tuple(digits), "finite", steps=n)
            hit = seen.get(cur)
            if hit is not None:
                return DigitSequence(
                    tuple(digits), "eventually-periodic", preperiod=hit, period=n - hit
                )
            if n == cap:
                return DigitSequence(tuple(digits), "unknown", cap=cap)
            seen[cur] = n
            d = self.digit_of(cur)
            digits.append(d)
            cur = self.qring.divide_by_x(cur - d)
            n += 1

    def expand(self, a: QuotElem, cap: int = DEFAULT_STEP_CAP) -> Expansion:
        seq = self.digit_sequence(a, cap)
        if seq.kind == "finite":
            return Expansion("finite", seq.digits, steps=seq.steps)
        if seq.kind == "eventually-periodic":
            # the orbit entered a cycle avoiding 0, so no iterate is ever 0
            return Expansion(
                "proven-non-finite",
                None,
                steps=seq.preperiod + seq.period,
                period=seq.period,
            )
        return Expansion("unknown", None, steps=cap)

    def evaluate(self, digits: Iterable[QuotElem]) -> QuotElem:
        """Horner evaluation of sum(digits[i] * X^i) in R."""
        total = self.qring.zero
        for d in reversed(list(digits)):
            total = self.qring.mul_x(total) + d
        return total

    def zero_cycle(self, cap: int = DEFAULT_STEP_CAP) -> ZeroCycle | None:
        """Shortest digit string summing to 0, from the orbit of 0."""
        if cap < 1:
            raise ValueError("cap must be at least 1")
        seen = set()
        digits: list[QuotElem] = []
        cur = self.qring.zero
        for _ in range(cap):
            d = self.digit_of(cur)
            digits.append(d)
            cur = self.qring.divide_by_x(cur - d)
            if cur.is_zero:
                return ZeroCycle(tuple(digits))
            if cur in seen:
                return None
            seen.add(cur)
        return None

    def periodic_set(
        self, seeds: Iterable[QuotElem], cap: int = DEFAULT_STEP_CAP
    ) -> PeriodicSetReport:
        """All cycles the orbits of the seeds run into.

        Exhaustive for the whole periodic set only when the seeds cover
        a stabilised witness closure.
        """
        on_cycle: set[QuotElem] = set()
        resolved: set[QuotElem] = set()
        cycles: list[tuple] = []
        capped = False
        for seed in sorted(seeds, key=self.qring.sort_key):
            path: list[QuotElem] = []
            index: dict[QuotElem, int] = {}
            cur = seed
            steps = 0
            hit_cap = False
            while cur not in resolved:
                if cur in index:
                    cyc = path[index[cur] :]
                    start = min(range(len(cyc)), key=lambda i: self.qring.sort_key(cyc[i]))
                    cycles.append(tuple(cyc[start:] + cyc[:start]))
                    on_cycle.update(cyc)
                    break
                if steps >= cap:
                    hit_cap = True
                    capped = True
                    break
                index[cur] = len(path)
                path.append(cur)
                cur = self.step(cur)
                steps += 1
            if not hit_cap:
                resolved.update(path)
        cycles.sort(key=lambda c: self.qring.sort_key(c[0]))
        zero = self.qring.zero
        return PeriodicSetReport(
            elements=frozenset(on_cycle),
            orbits=tuple(cycles),
            contains_zero=any(zero in c for c in cycles),
            capped=capped,
        )

    # -- the coordinate form of the dynamics -----------------------------

    def coordinate_step(self, coords: tuple) -> tuple:
        """The shift-with-carry action on basis coordinates.

        Requires a constant digit set; the element sum(a_i w_i) has
        constant coefficient sum(a_i p_{d-i}), whose digit determines
        the exact division by p0 that yields the new last coordinate.
        """
        if not self.digits_constant:
            raise ValueError("coordinate form requires a constant digit set")
        ring = self.ring
        d = self.qring.d
        if len(coords) != d:
            raise ValueError(f"expected {d} coordinates")
        pc = self.modulus.coeffs
        p0 = self.qring.p0
        c = ring.zero
        for i, a in enumerate(coords):
            c = ring.add(c, ring.mul(ring.coerce(a), pc[d - i]))
        # c = r + q0*p0 and the digit e0 = r + q1*p0 share the residue r,
        # so the new coordinate -(c - e0)/p0 equals q1 - q0
        r, q0 = ring.canonical_residue(c, p0)
        q1 = ring.canonical_residue(self._lookup[r].constant, p0)[1]
        return tuple(coords[1:]) + (ring.sub(q1, q0),)


def validate_system(ring: Ring, modulus: Poly, digits) -> DigitSystem:
    """Check every digit-system invariant; raise ValidationError listing
    all violations, otherwise return the immutable system."""
    violations: list[str] = []
    if modulus.ring != ring:
        raise ValidationError(["modulus is defined over a different ring"])
    if modulus.degree < 1:
        violations.append("the base polynomial must have degree at least 1")
        raise ValidationError(violations)
    p0 = modulus.constant
    if ring.is_zero(p0):
        violations.append("the constant coefficient p0 of the base polynomial is zero")
    elif ring.is_unit(p0):
        violations.append(
            f"p0 = {ring.format(p0)} is a unit: the residue ring modulo the base is "
            "trivial, so the digit set degenerates to a single digit"
        )
    if ring.is_zero(modulus.lead):
        violations.append("the leading coefficient of the base polynomial is zero")
    if violations:
        raise ValidationError(violations)

    qring = QuotRing(modulus)
    normalized = []
    for d in digits:
        if isinstance(d, QuotElem):
            qring._check(d)
            normalized.append(QuotElem(qring, d.low, d.tail))
        elif isinstance(d, Poly):
            normalized.append(qring.normalize(d))
        else:
            normalized.append(qring.from_const(d))

    expected = ring.quotient_size(p0)
    if len(normalized) != expected:
        violations.append(
            f"the digit set has {len(normalized)} elements but the residue ring "
            f"modulo {ring.format(p0)} has {expected}"
        )
    lookup: dict = {}
    for d in normalized:
        key = ring.canonical_residue(d.constant, p0)[0]
        if key in lookup:
            violations.append(
                f"digits {qring.format(lookup[key])} and {qring.format(d)} lie in the "
                f"same residue class (constant coefficients congruent to "
                f"{ring.format(key)} mod {ring.format(p0)})"
            )
        else:
            lookup[key] = d
    if violations:
        raise ValidationError(violations)
    return DigitSystem(qring, tuple(normalized), lookup)

"""Digit systems on E[x]/(P1*P2) assembled from systems on the factors.

Given digit systems with constant digit sets on the factors, the
combined digit set is {d + e*P1 : d in N1, e in N2} (and, for more
factors, d1 + d2*P1 + d3*P1*P2 + ...).  Expansion in the combined
system can be driven by a coupled pair of backward divisions on the
factor coefficient streams; the digit stream it emits coincides with
the generic dynamics on the combined system because digit strings are
unique.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import witness
from .digits import DigitSystem, validate_system
from .polyquot import Poly
from .rings import Ring


@dataclass(frozen=True)
class ProductSystem:
    factors: tuple  # ((P_i, digit values, DigitSystem), ...)
    combined: DigitSystem
    fep_propagated: str  # "yes" | "unknown" (conjunction of factor verdicts)


@dataclass(frozen=True)
class ProductExpansion:
    status: str  # "finite" | "eventually-periodic" | "unknown"
    digits: tuple
    steps: int
    preperiod: int | None = None
    period: int | None = None


def _constant_values(ring: Ring, digit_values) -> tuple:
    out = []
    for v in digit_values:
        try:
            out.append(ring.coerce(v))
        except TypeError as exc:
            raise ValueError(f"product factors need constant digit sets: {exc}") from exc
    return tuple(out)


def _check_constant(system: DigitSystem, which: str) -> None:
    if not system.digits_constant:
        raise ValueError(f"{which} must have a constant digit set")


def product_digit_set(ring: Ring, p1: Poly, n1, p2: Poly, n2) -> ProductSystem:
    """Two-factor combined system over P1*P2 with digits d + e*P1."""
    return multi_product_digit_set(ring, [(p1, n1), (p2, n2)])


def multi_product_digit_set(
    ring: Ring, factors, closure_cap: int = witness.DEFAULT_CLOSURE_CAP
) -> ProductSystem:
    """k-factor combined system with digits d1 + d2*P1 + ... + dk*P1...P(k-1).

    The finite-expansion flag is propagated only when every factor
    passes the witness decision and 0 is a digit of each factor but
    possibly the last; the factor order matters, permutations give
    different digit sets.
    """
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    built = []
    for modulus, digit_values in factors:
        values = _constant_values(ring, digit_values)
        system = validate_system(ring, modulus, values)
        _check_constant(system, f"factor {modulus}")
        built.append((modulus, values, system))

    combined_modulus = built[0][0]
    for modulus, _, _ in built[1:]:
        combined_modulus = combined_modulus * modulus

    # digits d1 + d2*P1 + d3*P1*P2 + ...; the first factor varies fastest
    prefix = Poly.make(ring, [ring.one])
    digit_polys = [Poly.make(ring, [ring.zero])]
    for modulus, values, _ in built:
        digit_polys = [
            base + prefix.scale(v) for v in values for base in digit_polys
        ]
        prefix = prefix * modulus
    combined = validate_system(ring, combined_modulus, digit_polys)

    zero_ok = all(
        any(ring.is_zero(v) for v in values) for _, values, _ in built[:-1]
    )
    flag = "unknown"
    if zero_ok:
        verdicts = [
            witness.decide_fep(system, closure_cap=closure_cap)
            for _, _, system in built
        ]
        if all(v.answer == "yes" for v in verdicts):
            flag = "yes"
    return ProductSystem(tuple(built), combined, flag)


def product_expand(
    psys: ProductSystem, element: Poly, cap: int = 10**6
) -> ProductExpansion:
    """Coupled-recurrence expansion of a raw polynomial in the
    two-factor combined system.

    Repeatedly splits the running constant terms a0 = d + k*p0 and
    b0 + k = e + l*p0', emits the combined digit d + e*P1, and shifts
    both coefficient streams down with carries -k*p_{i+1} and
    -l*p'_{i+1}.  Terminates when both streams vanish; a repeated
    (a, b) state proves the digit stream eventually periodic.
    """
    if len(psys.factors) != 2:
        raise ValueError("the coupled recurrence works on two-factor systems")
    (p1, n1, sys1), (p2, n2, sys2) = psys.factors
    ring = psys.combined.ring
    if element.ring != ring:
        raise ValueError("element over the wrong ring")

    p = p1.coeffs
    pp = p2.coeffs
    p0 = p1.constant
    pp0 = p2.constant
    lookup1 = {ring.canonical_residue(v, p0)[0]: v for v in n1}
    lookup2 = {ring.canonical_residue(v, pp0)[0]: v for v in n2}
    combined_digit = {}
    qring = psys.combined.qring
    for dv in n1:
        for ev in n2:
            poly = Poly.make(ring, [dv]) + p1.scale(ev)
            combined_digit[(dv, ev)] = qring.normalize(poly)

    def shift(coeffs: list, carry, mod_coeffs) -> list:
        top = max(len(coeffs) - 1, len(mod_coeffs) - 1)
        out = []
        for i in range(top):
            val = coeffs[i + 1] if i + 1 < len(coeffs) else ring.zero
            if not ring.is_zero(carry) and i + 1 < len(mod_coeffs):
                val = ring.sub(val, ring.mul(carry, mod_coeffs[i + 1]))
            out.append(val)
        while out and ring.is_zero(out[-1]):
            out.pop()
        return out

    a = list(element.coeffs)
    b: list = []
    digits: list = []
    seen: dict = {}
    j = 0
    while j < cap:
        if not a and not b:
            return ProductExpansion("finite", tuple(digits), steps=j)
        state = (tuple(a), tuple(b))
        hit = seen.get(state)
        if hit is not None:
            return ProductExpansion(
                "eventually-periodic",
                tuple(digits),
                steps=j,
                preperiod=hit,
                period=j - hit,
            )
        seen[state] = j
        a0 = a[0] if a else ring.zero
        d = lookup1[ring.canonical_residue(a0, p0)[0]]
        k = ring.exact_div(ring.sub(a0, d), p0)
        b0 = b[0] if b else ring.zero
        t = ring.add(b0, k)
        e = lookup2[ring.canonical_residue(t, pp0)[0]]
        l = ring.exact_div(ring.sub(t, e), pp0)
        digits.append(combined_digit[(d, e)])
        a = shift(a, k, p)
        b = shift(b, l, pp)
        j += 1
    return ProductExpansion("unknown", tuple(digits), steps=cap)

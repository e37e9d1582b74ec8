"""Witness sets: finite certificates for expansion properties.

A witness set for a submodule S of R contains additive generators of S
(with their inverses) and is closed under A -> T(A + e) for every
digit e.  When every witness reaches 0 under T, every element of S
has a finite expansion, and by the reduction theorems for the
power-basis module and the shifted-coefficient basis module this
decides the property for all of R.

The closure operator here also includes e = 0, so plain T-images of
witnesses stay inside the set and orbit checks never leave it.  The
norm bound for closure finiteness is not computed; termination is
detected by set stabilisation under a size cap.

Over a polynomial coefficient ring F_p[y] no finite set can additively
generate the module, so a "yes" there rests on the stabilised closure
alone (the verdict says so), while "no" is always backed by an
explicit cycle avoiding 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .digits import DigitSystem
from .polyquot import Poly
from .rings import GaussianInt, GaussianIntegerRing, FpPolynomialRing, Z

DEFAULT_CLOSURE_CAP = 10**5


@dataclass(frozen=True)
class WitnessClosure:
    elements: frozenset
    seed: frozenset
    stabilized: bool
    rounds: int
    cap: int

    def __len__(self) -> int:
        return len(self.elements)


@dataclass
class Verdict:
    """Answer to an FEP/PEP query with a re-checkable certificate."""

    prop: str  # "fep" | "pep"
    answer: str  # "yes" | "no" | "unknown"
    reason: str
    witnesses: int | None = None
    stabilized: bool | None = None
    certificate: dict = field(default_factory=dict)


@dataclass(frozen=True)
class OrbitGraph:
    """The functional graph of T on a finite set (out-degree one)."""

    system: DigitSystem
    nodes: tuple
    succ: dict

    def edges(self):
        return tuple((v, self.succ[v]) for v in self.nodes)

    def to_dot(self) -> str:
        fmt = self.system.qring.format
        lines = ["digraph T {"]
        for v in self.nodes:
            lines.append(f'  "{fmt(v)}" -> "{fmt(self.succ[v])}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ExpandingReport:
    status: str  # "expanding" | "not-expanding" | "borderline"
    moduli: tuple
    modulus_sq: Fraction | None  # exact |root|^2 for linear polynomials


def seed_witnesses(system: DigitSystem, mode: str = "brunotte") -> frozenset:
    """Additive generators (and inverses) of the reduction module.

    mode "brunotte": the basis w_0..w_{d-1}; requires constant digits.
    mode "power": the powers 1, X, ..., X^{k-1} for the system's k.
    Over the Gaussian integers the i-multiples are included so that the
    seeds really generate additively.
    """
    qring = system.qring
    if mode == "brunotte":
        if not system.digits_constant:
            raise ValueError("basis witnesses require a constant digit set")
        gens = list(qring.brunotte_basis())
    elif mode == "power":
        gens = []
        cur = qring.one
        for _ in range(system.k):
            gens.append(cur)
            cur = qring.mul_x(cur)
    else:
        raise ValueError(f"unknown witness mode {mode!r}")
    if isinstance(system.ring, GaussianIntegerRing):
        gens += [qring.scale(g, GaussianInt(0, 1)) for g in gens]
    out = set()
    for g in gens:
        out.add(g)
        out.add(-g)
    return frozenset(out)


def _coordinate_step_fn(system: DigitSystem):
    """Shift-with-carry form of v -> T(v + shift) on basis coordinates,
    valid when all digits are constant.

    With c = r + q0*p0 and the matching digit e0 = r + q1*p0, the exact
    quotient (c - e0)/p0 is q0 - q1, so one division with remainder per
    step suffices.
    """
    ring = system.ring
    pc = system.modulus.coeffs
    d = system.qring.d
    p0 = pc[0]
    digit_carry = {}
    for e in system.digits:
        r, q1 = ring.canonical_residue(e.constant, p0)
        digit_carry[r] = q1
    add, mul, sub = ring.add, ring.mul, ring.sub
    res = ring.canonical_residue

    def step(coords: tuple, shift) -> tuple:
        c = shift
        for i, a in enumerate(coords):
            c = add(c, mul(a, pc[d - i]))
        r, q0 = res(c, p0)
        return coords[1:] + (sub(digit_carry[r], q0),)

    return step


def witness_closure(
    system: DigitSystem, seed, cap: int = DEFAULT_CLOSURE_CAP
) -> WitnessClosure:
    """Least set containing the seed and closed under v -> T(v + e)
    for e in N and e = 0, or a flagged partial set when the cap is hit."""
    qring = system.qring
    seed = frozenset(seed)
    if system.digits_constant:
        try:
            seed_coords = [qring.coords(v) for v in seed]
        except ValueError:
            seed_coords = None
        if seed_coords is not None:
            return _coordinate_closure(system, seed, seed_coords, cap)
    shifts = list(system.digits)
    if not any(d.is_zero for d in shifts):
        shifts.append(qring.zero)
    elements = set(seed)
    frontier = sorted(seed, key=qring.sort_key)
    rounds = 0
    while frontier:
        if len(elements) > cap:
            return WitnessClosure(frozenset(elements), seed, False, rounds, cap)
        new = []
        for v in frontier:
            for e in shifts:
                w = system.step(v + e)
                if w not in elements:
                    elements.add(w)
                    new.append(w)
        frontier = sorted(set(new), key=qring.sort_key)
        rounds += 1
    if len(elements) > cap:
        return WitnessClosure(frozenset(elements), seed, False, rounds, cap)
    return WitnessClosure(frozenset(elements), seed, True, rounds, cap)


def _coordinate_closure(system, seed, seed_coords, cap) -> WitnessClosure:
    # same loop in basis coordinates: seeds lie in the basis module and
    # T(v + e) stays inside it for constant digit sets
    ring = system.ring
    step = _coordinate_step_fn(system)
    shifts = [e.constant for e in system.digits]
    if not any(ring.is_zero(s) for s in shifts):
        shifts.append(ring.zero)
    elements = set(seed_coords)
    frontier = list(elements)
    rounds = 0
    stabilized = True
    while frontier:
        if len(elements) > cap:
            stabilized = False
            break
        new = []
        for v in frontier:
            for s in shifts:
                w = step(v, s)
                if w not in elements:
                    elements.add(w)
                    new.append(w)
        frontier = new
        rounds += 1
    if len(elements) > cap:
        stabilized = False
    out = frozenset(system.qring.from_coords(c) for c in elements)
    return WitnessClosure(out, frozenset(seed), stabilized, rounds, cap)


def verify_witness_set(system: DigitSystem, elements, generators) -> tuple[bool, list]:
    """Check generator containment and closure under v -> T(v + e), e in N.

    Returns (ok, violations); violations are ("generator", g) or
    (v, e, image) triples.
    """
    qring = system.qring
    vset = set(elements)
    violations = []
    for g in sorted(set(generators), key=qring.sort_key):
        if g not in vset:
            violations.append(("generator", g))
    for v in sorted(vset, key=qring.sort_key):
        for e in system.digits:
            w = system.step(v + e)
            if w not in vset:
                violations.append((v, e, w))
    return not violations, violations


def _generation_caveat(system: DigitSystem) -> str:
    # no finite set generates the reduction module additively over F_p[y];
    # a positive answer there rests on the stabilised closure alone
    if isinstance(system.ring, FpPolynomialRing):
        return " (positive answers over F_p[y] rest on the stabilised closure)"
    return ""


def _orbit_statuses(system: DigitSystem, elements) -> tuple[dict, list]:
    """For each element of a T-closed finite set, whether its orbit
    reaches 0 and in how many steps; collects the cycles found."""
    qring = system.qring
    status: dict = {}
    cycles: list[tuple] = []
    for v in sorted(elements, key=qring.sort_key):
        path = []
        index = {}
        cur = v
        while True:
            if cur.is_zero:
                status.setdefault(cur, (True, 0))
                steps = 0
                for u in reversed(path):
                    steps += 1
                    status[u] = (True, steps)
                break
            if cur in status:
                reaches, steps = status[cur]
                for offset, u in enumerate(reversed(path), start=1):
                    status[u] = (reaches, steps + offset if reaches else steps)
                break
            if cur in index:
                cyc = path[index[cur] :]
                start = min(range(len(cyc)), key=lambda i: qring.sort_key(cyc[i]))
                cycles.append(tuple(cyc[start:] + cyc[:start]))
                for u in cyc:
                    status[u] = (False, len(cyc))
                for u in path[: index[cur]]:
                    status[u] = (False, len(cyc))
                break
            index[cur] = len(path)
            path.append(cur)
            cur = system.step(cur)
    return status, cycles


def decide_fep(
    system: DigitSystem,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    mode: str | None = None,
) -> Verdict:
    """Witness-based finite-expansion decision.

    yes: the closure stabilised and every witness orbit reaches 0.
    no: some witness orbit enters a cycle avoiding 0 (the certificate).
    unknown: the closure exceeded its cap.
    """
    if mode is None:
        mode = "brunotte" if system.digits_constant else "power"
    seed = seed_witnesses(system, mode)
    closure = witness_closure(system, seed, closure_cap)
    if not closure.stabilized:
        return Verdict(
            "fep",
            "unknown",
            f"witness closure exceeded {closure.cap} elements",
            witnesses=len(closure),
            stabilized=False,
            certificate={"cap": closure.cap, "mode": mode},
        )
    status, cycles = _orbit_statuses(system, closure.elements)
    if cycles:
        cycle = min(cycles, key=lambda c: system.qring.sort_key(c[0]))
        return Verdict(
            "fep",
            "no",
            "a witness orbit enters a cycle that avoids 0",
            witnesses=len(closure),
            stabilized=True,
            certificate={"cycle": cycle, "mode": mode},
        )
    orbit_steps = {v: status[v][1] for v in closure.elements}
    return Verdict(
        "fep",
        "yes",
        "every witness orbit reaches 0" + _generation_caveat(system),
        witnesses=len(closure),
        stabilized=True,
        certificate={"orbit_steps": orbit_steps, "mode": mode, "closure": closure},
    )


def decide_pep(
    system: DigitSystem,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    mode: str | None = None,
) -> Verdict:
    """Periodic-expansion decision: yes when the witness closure
    stabilises (every orbit then falls into the finite closed set);
    never answers no, since non-periodicity has no finite certificate."""
    if mode is None:
        mode = "brunotte" if system.digits_constant else "power"
    seed = seed_witnesses(system, mode)
    closure = witness_closure(system, seed, closure_cap)
    if closure.stabilized:
        return Verdict(
            "pep",
            "yes",
            "the witness closure is finite, so every orbit is eventually periodic"
            + _generation_caveat(system),
            witnesses=len(closure),
            stabilized=True,
            certificate={"rounds": closure.rounds, "mode": mode, "closure": closure},
        )
    return Verdict(
        "pep",
        "unknown",
        f"witness closure exceeded {closure.cap} elements",
        witnesses=len(closure),
        stabilized=False,
        certificate={"cap": closure.cap, "mode": mode},
    )


def orbit_graph(system: DigitSystem, elements, growth_cap: int = 100_000) -> OrbitGraph:
    """The T-action graph on the given set, extended (if needed) until
    every node's image is itself a node."""
    qring = system.qring
    nodes = set(elements)
    succ = {}
    frontier = list(nodes)
    added = 0
    while frontier:
        nxt = []
        for v in frontier:
            w = system.step(v)
            succ[v] = w
            if w not in nodes:
                nodes.add(w)
                nxt.append(w)
                added += 1
                if added > growth_cap:
                    raise ValueError("orbit graph did not close within the growth cap")
        frontier = nxt
    ordered = tuple(sorted(nodes, key=qring.format))
    return OrbitGraph(system, ordered, succ)


def euclidean_necessary_check(system: DigitSystem) -> Verdict | None:
    """Quick negative test: with small constant digits, a leading
    coefficient at least as large as p0 (in Euclidean value) rules the
    finite expansion property out.  None when inconclusive."""
    if not system.digits_constant:
        return None
    ring = system.ring
    g = ring.euclid_value
    p0 = system.qring.p0
    if not all(g(e) < g(p0) for e in system.constant_digits()):
        return None
    pd = system.qring.pd
    if g(pd) >= g(p0):
        return Verdict(
            "fep",
            "no",
            "the leading coefficient has Euclidean value at least that of p0 while "
            "all digits are smaller than p0, so no nonzero element of the basis "
            "module has a finite expansion",
            certificate={"value_pd": g(pd), "value_p0": g(p0)},
        )
    return None


def expanding_check(modulus: Poly, delta: float = 1e-9) -> ExpandingReport:
    """Numerical root-modulus test for base polynomials over Z or Z[i]."""
    ring = modulus.ring
    if isinstance(ring, FpPolynomialRing):
        raise ValueError("root moduli are defined only for rings embeddable in C")
    if modulus.degree < 1:
        raise ValueError("the polynomial must have degree at least 1")
    if ring == Z:
        cs = [complex(c) for c in modulus.coeffs]
    else:
        cs = [complex(c.re, c.im) for c in modulus.coeffs]
    roots = np.roots(list(reversed(cs)))
    moduli = tuple(sorted(float(abs(r)) for r in roots))
    modulus_sq = None
    if modulus.degree == 1:
        p0, p1 = modulus.coeffs
        if ring == Z:
            modulus_sq = Fraction(p0 * p0, p1 * p1)
        else:
            modulus_sq = Fraction(p0.norm(), p1.norm())
    low = moduli[0]
    if any(1 - delta <= m <= 1 + delta for m in moduli):
        status = "borderline"
    elif low < 1:
        status = "not-expanding"
    else:
        status = "expanding"
    return ExpandingReport(status, moduli, modulus_sq)

"""Canonical ideals by linkage, certified symbolic powers of height-one
ideals, principality search and Q-Gorenstein index.

Every ideal of ``R = S/Q`` is carried as an ideal of ``S`` containing ``Q``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .groebner import DEFAULT_BUDGET, Budget
from .idealops import (
    Ideal,
    height,
    ideal_power,
    ideal_quotient,
    quotient_by_element,
    saturation,
)
from .polycore import Poly, PolyRing, StructuralError, monomials_of_degree

log = logging.getLogger(__name__)


class CertificateError(RuntimeError):
    """No principality certificate (a, x2) could be produced or validated."""


class LinkageError(RuntimeError):
    """No suitable regular sequence was found inside the defining ideal."""


class PreconditionError(ValueError):
    """An input violates a stated precondition."""


# ---------------------------------------------------------------------------
# presentations


class RingPresentation:
    """``R = S/Q`` for ``S = F_p[vars]`` with a fixed monomial order."""

    def __init__(self, ring: PolyRing, Q: Ideal | Sequence[Poly] = (), name: str = ""):
        if not isinstance(Q, Ideal):
            Q = Ideal(ring, list(Q))
        if Q.ring != ring:
            raise StructuralError("defining ideal lives in a different ring")
        if Q.is_unit():
            raise ValueError("defining ideal must be proper")
        self.ring = ring
        self.Q = Q.reduced()
        self.name = name

    @classmethod
    def from_strings(cls, p: int, names: Sequence[str], relations: Sequence[str] = (),
                     order: str = "grevlex", name: str = "") -> "RingPresentation":
        ring = PolyRing(p, names, order)
        return cls(ring, [ring.parse(r) for r in relations], name=name)

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.Q.gens) or "0"
        return f"RingPresentation(F_{self.p}[{','.join(self.vars)}]/({rel}))"

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.ring.names

    @property
    def order(self):
        return self.ring.order

    @cached_property
    def height_Q(self) -> int:
        return height(self.Q) if self.Q.gens else 0

    @cached_property
    def dim(self) -> int:
        return self.ring.nvars - self.height_Q

    @property
    def maximal_ideal(self) -> Ideal:
        return Ideal(self.ring, list(self.Q.gens) + self.ring.gens())

    def is_homogeneous(self) -> bool:
        return self.Q.is_homogeneous()

    def ideal(self, polys: Sequence[Poly] | Ideal) -> Ideal:
        """The ideal of ``S`` generated by ``polys`` together with ``Q``."""
        if isinstance(polys, Ideal):
            polys = polys.gens
        return Ideal(self.ring, list(polys) + list(self.Q.gens))

    def quotient_by(self, f: Poly | Sequence[Poly], name: str = "") -> "RingPresentation":
        fs = [f] if isinstance(f, Poly) else list(f)
        return RingPresentation(self.ring, self.ideal(fs), name=name or f"{self.name}/(f)")

    def height_in_R(self, I: Ideal) -> int:
        """``ht(I R)`` for an ideal of ``S``; ``Q`` is assumed equidimensional."""
        full = self.ideal(I)
        if full.is_unit():
            return 10**9
        return height(full) - self.height_Q

    def is_nonzerodivisor(self, g: Poly, modulo: Optional[Ideal] = None) -> bool:
        """``g`` is a non-zero-divisor on ``S/(Q + modulo)``."""
        base = self.Q if modulo is None else self.ideal(modulo).reduced()
        if base.contains(g):
            return False
        return quotient_by_element(base, g) == base

    def same_ideal(self, I: Ideal, J: Ideal) -> bool:
        return self.ideal(I) == self.ideal(J)


@dataclass
class DivisorialIdeal:
    """A height-one ideal ``J/Q`` of ``R`` with an optional certificate
    ``(a, x2)``: ``a ∈ J`` a non-zero-divisor, ``x2·J ⊆ (a) + Q`` and
    ``ht((J + x2)/Q) ≥ 2``."""

    R: RingPresentation
    J: Ideal
    cert: Optional[Tuple[Poly, Poly]] = None
    canonical: bool = False
    note: str = ""

    def __post_init__(self):
        self.J = self.R.ideal(self.J).reduced()

    @property
    def a(self) -> Poly:
        if self.cert is None:
            raise CertificateError("no certificate; call find_certificate first")
        return self.cert[0]

    @property
    def x2(self) -> Poly:
        if self.cert is None:
            raise CertificateError("no certificate; call find_certificate first")
        return self.cert[1]

    def is_unit(self) -> bool:
        return self.J.is_unit()

    def with_certificate(self, a: Poly, x2: Poly) -> "DivisorialIdeal":
        return DivisorialIdeal(self.R, self.J, (a, x2), self.canonical, self.note)


# ---------------------------------------------------------------------------
# random helpers


def random_form(ring: PolyRing, degree: int, rng: random.Random) -> Poly:
    """Random homogeneous polynomial of the given degree (never zero)."""
    if degree == 0:
        return ring.const(rng.randrange(1, ring.p))
    monos = list(monomials_of_degree(ring.nvars, degree))
    while True:
        d = {m: rng.randrange(ring.p) for m in monos}
        f = ring.from_dict(d)
        if f:
            return f


def random_combination(gens: Sequence[Poly], rng: random.Random, degree: Optional[int] = None) -> Poly:
    """Random combination of ``gens``; homogeneous of ``degree`` when all
    ``gens`` are homogeneous (lower-degree generators get random form
    multipliers, higher ones are skipped)."""
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("no generators to combine")
    ring = gens[0].ring
    if all(g.is_homogeneous() for g in gens):
        if degree is None:
            degree = min(g.degree() for g in gens)
        usable = [g for g in gens if g.degree() <= degree]
        while True:
            out = ring.zero()
            for g in usable:
                coeff = rng.randrange(ring.p)
                if not coeff:
                    continue
                mult = random_form(ring, degree - g.degree(), rng) if g.degree() < degree else ring.const(1)
                out = out + (mult * g).scale(coeff)
            if out:
                return out
    while True:
        out = ring.zero()
        for g in gens:
            out = out + g.scale(rng.randrange(ring.p))
        if out:
            return out


def _degrees(gens: Sequence[Poly]) -> List[int]:
    return sorted({g.degree() for g in gens if g})


# ---------------------------------------------------------------------------
# operations


def regular_sequence_in(Q: Ideal, h: int, trials: int = 40, seed: int = 0) -> List[Poly]:
    """``h`` combinations of generators of ``Q`` generating an ideal of height ``h``."""
    if h == 0:
        return []
    rng = random.Random(seed)
    gens = [g for g in Q.gens if g]
    seq: List[Poly] = []
    degs = _degrees(gens)
    maxdeg = max(degs) + 2 if degs else 1
    for i in range(h):
        found = None
        for D in range(degs[0], maxdeg + 1):
            # a single generator of the lowest degree is preferred when it already works
            cands = [g for g in gens if g.degree() == D and g not in seq]
            for g in cands[:1]:
                if height(Ideal(Q.ring, seq + [g])) == i + 1:
                    found = g
                    break
            if found is not None:
                break
            for _ in range(trials):
                z = random_combination(gens, rng, D)
                if height(Ideal(Q.ring, seq + [z])) == i + 1:
                    found = z
                    break
            if found is not None:
                break
        if found is None:
            raise LinkageError("no regular sequence found")
        seq.append(found)
    return seq


def canonical_ideal(R: RingPresentation, seed: int = 0, avoid: Optional[Poly] = None,
                    retries: int = 12) -> DivisorialIdeal:
    """Canonical ideal ``J = ((z) : Q)`` for a maximal regular sequence ``z ⊆ Q``.

    With ``avoid`` given, linkage is retried with fresh sequences until
    ``avoid`` is a non-zero-divisor on ``R/J``.
    """
    h = R.height_Q
    for attempt in range(retries):
        s = seed + 7919 * attempt
        if h == 0:
            J = Ideal.unit(R.ring)
        else:
            z = regular_sequence_in(R.Q, h, seed=s)
            J = ideal_quotient(Ideal(R.ring, z), R.Q)
        D = DivisorialIdeal(R, J, canonical=True, note=f"linkage seed {s}")
        if avoid is None or D.is_unit() or R.is_nonzerodivisor(avoid, modulo=D.J):
            return D
        if h == 0:
            break
    raise LinkageError("could not re-embed the canonical ideal away from V(f)")


def is_principal_mod_Q(I: Ideal, R: RingPresentation, seed: int = 0, trials: int = 20) -> Optional[Poly]:
    """A generator ``g`` with ``I + Q = (g) + Q`` if one is found among the
    candidates; ``None`` means only "not found"."""
    full = R.ideal(I).reduced()
    if full.is_unit():
        return R.ring.one()
    cands = [g for g in full.gb() if not R.Q.contains(g)]
    if not cands:
        return R.ring.zero()
    cands.sort(key=lambda g: (g.degree(), len(g)))

    def works(g: Poly) -> bool:
        return full.issubset(R.ideal([g]))

    for g in cands:
        if works(g):
            return g
    rng = random.Random(seed)
    lowest = cands[0].degree()
    pool = [g for g in cands if g.degree() == lowest] if all(g.is_homogeneous() for g in cands) else cands
    for _ in range(trials):
        g = random_combination(pool, rng)
        if not R.Q.contains(g) and works(g):
            return g
    return None


def _check_certificate(D: DivisorialIdeal, a: Poly, x2: Poly) -> bool:
    R = D.R
    if not D.J.contains(a):
        return False
    if not R.is_nonzerodivisor(a):
        return False
    target = R.ideal([a]).reduced()
    if not all(target.contains(x2 * g) for g in D.J.gens):
        return False
    return R.height_in_R(Ideal(R.ring, list(D.J.gens) + [x2])) >= 2


def find_certificate(D: DivisorialIdeal, trials: int = 30, seed: int = 0) -> DivisorialIdeal:
    """Return ``D`` with a verified certificate ``(a, x2)``."""
    R = D.R
    if D.is_unit():
        one = R.ring.one()
        return D.with_certificate(one, one)
    if R.height_in_R(D.J) != 1:
        raise PreconditionError("ideal is not of height one in R")
    g = is_principal_mod_Q(D.J, R, seed=seed)
    if g is not None and g and R.is_nonzerodivisor(g):
        return D.with_certificate(g, R.ring.one())
    rng = random.Random(seed)
    gens = [h for h in D.J.gens if not R.Q.contains(h)]
    degs = _degrees(gens)
    for attempt in range(trials):
        deg = degs[min(attempt // 6, len(degs) - 1)] if degs else None
        a = random_combination(gens, rng, deg)
        if not R.is_nonzerodivisor(a):
            continue
        C = ideal_quotient(R.ideal([a]), D.J)
        cgens = [c for c in C.gb() if not D.J.contains(c)] or list(C.gb())
        cdegs = _degrees(cgens)
        for k in range(6):
            cdeg = cdegs[min(k // 2, len(cdegs) - 1)]
            x2 = random_combination(cgens, rng, cdeg)
            if _check_certificate(D, a, x2):
                return D.with_certificate(a, x2)
    raise CertificateError("no certificate found (ring may fail G1)")


def symbolic_power(D: DivisorialIdeal, n: int) -> Ideal:
    """``J^(n) = ((a^n) + Q : x2^∞)``."""
    if D.cert is None:
        raise CertificateError("symbolic_power needs a certificate; call find_certificate first")
    R = D.R
    if n == 0:
        return Ideal.unit(R.ring)
    a, x2 = D.cert
    base = R.ideal([a ** n]).reduced()
    if x2 == R.ring.one() or not x2.support():
        return base
    sat, _ = saturation(base, x2)
    return sat


def qgor_index(D: DivisorialIdeal, n_max: int = 6, seed: int = 0) -> Optional[int]:
    """Least ``n <= n_max`` with ``J^(n)`` principal (``None`` if not found)."""
    if D.cert is None:
        D = find_certificate(D, seed=seed)
    for n in range(1, n_max + 1):
        if is_principal_mod_Q(symbolic_power(D, n), D.R, seed=seed + n) is not None:
            return n
    return None


def principal_degrees(D: DivisorialIdeal, n_max: int, seed: int = 0) -> List[int]:
    """All ``n <= n_max`` at which a principal generator of ``J^(n)`` is found."""
    if D.cert is None:
        D = find_certificate(D, seed=seed)
    return [n for n in range(1, n_max + 1)
            if is_principal_mod_Q(symbolic_power(D, n), D.R, seed=seed + n) is not None]


@dataclass
class BaseChangeResult:
    equal: bool
    upstairs: Ideal
    downstairs: Ideal
    certificate: Tuple[Poly, Poly]


def base_change_symbolic_check(D: DivisorialIdeal, f: Poly, n: int, seed: int = 0) -> BaseChangeResult:
    """Compare ``J^(n) + (f)`` with the symbolic power of ``(J + f)/(f)`` in ``R/(f)``.

    Raises ``PreconditionError`` when ``f`` is a zero-divisor on ``R`` or
    ``R/J`` and ``CertificateError`` when the downstairs certificate fails.
    """
    R = D.R
    if not R.is_nonzerodivisor(f):
        raise PreconditionError("f is a zero-divisor on R")
    if not D.is_unit() and not R.is_nonzerodivisor(f, modulo=D.J):
        raise PreconditionError("f is a zero-divisor on R/J")
    if D.cert is None:
        D = find_certificate(D, seed=seed)
    up = R.ideal(list(symbolic_power(D, n).gens) + [f]).reduced()
    Rf = R.quotient_by(f)
    Df = find_certificate(DivisorialIdeal(Rf, Ideal(R.ring, list(D.J.gens) + [f])), seed=seed + 1)
    down = Rf.ideal(symbolic_power(Df, n)).reduced()
    return BaseChangeResult(up == down, up, down, Df.cert)


def g1_stability_witness(R: RingPresentation, f: Poly, primes: Sequence[Ideal], n_cap: int = 60) -> int:
    """Least ``N`` with ``f ∉ m^N + p_i`` for every listed prime."""
    N = 1
    m = Ideal(R.ring, R.ring.gens())
    for P in primes:
        P = R.ideal(P).reduced()
        if P.contains(f):
            raise PreconditionError(f"R/(f) not G1 at {P}")
        Ni = 1
        while True:
            mN = ideal_power(m, Ni) if Ni > 0 else Ideal.unit(R.ring)
            if not Ideal(R.ring, list(P.gens) + list(mN.gens)).contains(f):
                break
            Ni += 1
            if Ni > n_cap:
                raise RuntimeError("membership ladder did not terminate")
        N = max(N, Ni)
    return N

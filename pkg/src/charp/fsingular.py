"""F-purity via Fedder's criterion and Frobenius splitting ideals as colon
ideals of parameter ideals, with the colon identities used to compare them.

All ideals of ``R = S/Q`` are ideals of ``S`` that contain ``Q``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .divisorial import (
    CertificateError,
    DivisorialIdeal,
    PreconditionError,
    RingPresentation,
    canonical_ideal,
    find_certificate,
    random_combination,
    random_form,
    symbolic_power,
)
from .idealops import (
    Ideal,
    bracket_power,
    colon_equals,
    height,
    ideal_quotient,
    is_proper_at_origin,
    local_equal,
    primary_component_at_origin,
    primary_exponent,
    quotient_by_element,
)
from .groebner import BudgetExceeded
from .polycore import Poly

log = logging.getLogger(__name__)

T_MAX = 8


class SocleError(RuntimeError):
    pass


class StabilizationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Fedder


def in_frobenius_maximal(g: Poly, q: int) -> bool:
    """``g ∈ m^[q]``: every term has some exponent at least ``q``."""
    return all(any(e >= q for e in m) for m in g._d)


def frobenius_maximal(ring, q: int) -> Ideal:
    return Ideal(ring, [x ** q for x in ring.gens()])


@dataclass
class FPurityVerdict:
    is_fpure: bool
    method: str
    witness: Optional[Poly] = None

    def as_dict(self) -> dict:
        return {"is_fpure": self.is_fpure, "method": self.method,
                "witness": None if self.witness is None else str(self.witness)}


def fedder_colon(R: RingPresentation) -> Ideal:
    """``(Q^[p] : Q)``."""
    Q = R.Q
    return ideal_quotient(bracket_power(Q, 1), Q)


def verify_fedder_witness(R: RingPresentation, g: Poly) -> bool:
    """``g ∈ (Q^[p] : Q)`` and ``g ∉ m^[p]``."""
    if in_frobenius_maximal(g, R.p):
        return False
    QF = bracket_power(R.Q, 1)
    return all(QF.contains(g * h) for h in R.Q.gens)


def fedder_is_fpure(R: RingPresentation, candidates: Sequence[Poly] = ()) -> FPurityVerdict:
    """F-purity at the ideal of all variables.

    ``candidates`` are tried first as witnesses; each is verified before it
    is accepted, so they only ever speed up a positive answer.
    """
    p = R.p
    for c in candidates:
        if c and verify_fedder_witness(R, c):
            return FPurityVerdict(True, "fedder", c)
    if not R.Q.gens:
        return FPurityVerdict(True, "fedder", R.ring.one())
    colon = fedder_colon(R)
    for g in sorted(colon.gens, key=lambda g: (g.degree(), len(g))):
        if not in_frobenius_maximal(g, p):
            return FPurityVerdict(True, "fedder", g)
    return FPurityVerdict(False, "fedder", None)


# ---------------------------------------------------------------------------
# splitting ideals


@dataclass
class SplittingData:
    e: int
    params: List[Poly]
    socle_u: Poly
    t_used: int
    Ie: Ideal
    J: DivisorialIdeal
    extra: List[Poly] = field(default_factory=list)
    note: str = ""

    @property
    def q(self) -> int:
        return self.J.R.p ** self.e

    @property
    def x1(self) -> Poly:
        return self.params[0]


@dataclass
class _Setup:
    J: DivisorialIdeal
    params: List[Poly]
    u: Poly
    extra: List[Poly]
    note: str


def _linear_form(R: RingPresentation, rng: random.Random, degree: int = 1) -> Poly:
    return random_form(R.ring, degree, rng)


def _grow_parameters(R: RingPresentation, base: List[Poly], count: int, rng: random.Random,
                     trials: int = 30) -> List[Poly]:
    """Extend ``base`` by ``count`` forms, each cutting the height by one more."""
    out: List[Poly] = []
    h0 = R.height_in_R(Ideal(R.ring, base)) if base else 0
    for i in range(count):
        found = None
        for deg in (1, 2, 3):
            for _ in range(trials):
                y = _linear_form(R, rng, deg)
                if R.height_in_R(Ideal(R.ring, base + out + [y])) == h0 + i + 1:
                    found = y
                    break
            if found is not None:
                break
        if found is None:
            raise PreconditionError("could not extend the parameter system")
        out.append(found)
    return out


def _socle(R: RingPresentation, A: Ideal) -> Tuple[Poly, Ideal]:
    """Socle generator of ``S/A`` for an ideal ``A`` primary to the maximal ideal."""
    A = A.reduced()
    if A.dimension() != 0 or not is_proper_at_origin(A):
        raise SocleError("quotient not Gorenstein artinian: J is not a canonical ideal or parameters invalid")
    m = Ideal(R.ring, R.ring.gens())
    S = ideal_quotient(A, m)
    dim = len(A.gb().standard_monomials()) - len(S.gb().standard_monomials())
    if dim != 1:
        raise SocleError(
            f"quotient not Gorenstein artinian: J is not a canonical ideal or parameters invalid (socle dimension {dim})")
    cands = sorted((g for g in S.gb() if not A.contains(g)), key=lambda g: (g.degree(), len(g)))
    return cands[0], S


def _choose_x1(R: RingPresentation, Rx: RingPresentation, Dw: DivisorialIdeal, rng: random.Random,
               extra: Sequence[Poly], trials: int = 20) -> Optional[Poly]:
    gens = [g for g in Dw.J.gens if not R.Q.contains(g)]
    x2 = Dw.x2
    cands = [Dw.a] + [random_combination(gens, rng) for _ in range(trials)]
    for x1 in cands:
        if not R.is_nonzerodivisor(x1):
            continue
        if extra and not Rx.is_nonzerodivisor(x1):
            continue
        if Rx.dim >= 2 and x2.support() and Rx.height_in_R(Ideal(R.ring, [x1, x2])) != 2:
            continue
        return x1
    return None


def _setup(R: RingPresentation, D: Optional[DivisorialIdeal], seed: int,
           extra: Sequence[Poly] = (), tries: int = 12) -> _Setup:
    extra = [g for g in extra if g]
    Rx = R.quotient_by(extra) if extra else R
    d = Rx.dim
    if d < 1:
        raise PreconditionError("dimension must be at least 1")
    if D is None:
        D = canonical_ideal(R, seed=seed, avoid=extra[0] if extra else None)
    rng = random.Random(seed)
    last = None
    for attempt in range(tries):
        note = ""
        if D.is_unit():
            # Gorenstein: J = R is replaced by the principal canonical ideal (x1)
            # over a small field every linear form can be a zero-divisor
            # (xy(x+y) over F_2), so higher degrees are tried next
            x1 = None
            for deg, tries_d in ((1, 40), (2, 20), (3, 20)):
                for _ in range(tries_d):
                    cand = _linear_form(R, rng, deg)
                    if R.is_nonzerodivisor(cand) and (not extra or Rx.is_nonzerodivisor(cand)):
                        x1 = cand
                        break
                if x1 is not None:
                    break
            if x1 is None:
                raise PreconditionError("no non-zero-divisor of degree at most 3 found")
            Dw = DivisorialIdeal(R, Ideal(R.ring, [x1]), (x1, R.ring.one()), True, "principal canonical ideal")
            note = "Gorenstein: canonical ideal taken as (x1)"
        else:
            try:
                Dw = find_certificate(DivisorialIdeal(R, D.J, None, D.canonical, D.note), seed=seed + 101 * attempt)
            except CertificateError as exc:
                last = exc
                continue
            # x1 is any regular element of J; x2 must be a parameter modulo it
            x1 = _choose_x1(R, Rx, Dw, rng, extra)
            if x1 is None:
                last = PreconditionError("no x1 in J with x2 a parameter modulo x1")
                continue
        params = [x1]
        try:
            if d >= 2:
                x2 = Dw.x2
                if not x2.support():
                    x2 = _linear_form(R, rng)
                if Rx.height_in_R(Ideal(R.ring, [x1, x2])) != 2:
                    last = PreconditionError("certificate element is not a parameter")
                    continue
                params.append(x2)
                params += _grow_parameters(Rx, params, d - 2, rng)
            A = Rx.ideal(list(Dw.J.gens) + params[1:])
            u, _ = _socle(Rx, A)
        except (PreconditionError, SocleError) as exc:
            last = exc
            continue
        return _Setup(Dw, params, u, extra, note)
    if isinstance(last, SocleError):
        raise last
    raise PreconditionError(f"could not set up parameters: {last}")


def colon_by_product(I: Ideal, factors: Sequence[Poly]) -> Ideal:
    """``(I : f_1 ⋯ f_k)`` computed one factor at a time."""
    cur = I.reduced()
    for f in factors:
        if cur.is_unit():
            break
        if f == I.ring.one():
            continue
        cur = quotient_by_element(cur, f).reduced()
    return cur


def _frob(polys: Sequence[Poly], q: int) -> List[Poly]:
    return [g ** q for g in polys]


def _splitting_colon(Rx: RingPresentation, s: _Setup, q: int, t: int) -> Ideal:
    x1, rest = s.params[0], s.params[1:]
    num = [(x1 ** (t - 1) * g) ** q for g in s.J.J.gens] + [x ** (t * q) for x in rest]
    base = Rx.ideal(num)
    factors = [x ** ((t - 1) * q) for x in s.params if t > 1] + [s.u ** q]
    return colon_by_product(base, factors)


def splitting_ideal(R: RingPresentation, J: Optional[DivisorialIdeal] = None, e: int = 1, seed: int = 0,
                    t_max: int = T_MAX, extra: Sequence[Poly] = ()) -> SplittingData:
    """``I_e`` as the stabilized colon of a parameter ideal (ladder in ``t``)."""
    if e < 1:
        raise ValueError("e must be positive")
    s = _setup(R, J, seed, extra)
    Rx = R.quotient_by(s.extra) if s.extra else R
    q = R.p ** e
    prev = _splitting_colon(Rx, s, q, 1)
    ladder = [prev]
    for t in range(2, t_max + 1):
        cur = _splitting_colon(Rx, s, q, t)
        if cur == prev:
            return SplittingData(e, s.params, s.u, t - 1, prev, s.J, list(s.extra), s.note)
        ladder.append(cur)
        prev = cur
    raise StabilizationError(
        f"no stabilization up to t = {t_max}; ladder sizes {[len(I.gens) for I in ladder]}")


def splitting_ideal_at(data: SplittingData, t: int) -> Ideal:
    R = data.J.R
    Rx = R.quotient_by(data.extra) if data.extra else R
    s = _Setup(data.J, data.params, data.socle_u, data.extra, data.note)
    return _splitting_colon(Rx, s, data.q, t)


def splitting_is_fpure(R: RingPresentation, seed: int = 0) -> FPurityVerdict:
    data = splitting_ideal(R, None, 1, seed)
    return FPurityVerdict(not data.Ie.is_unit(), "splitting_ideal", None)


def _reduced_numerator(data: SplittingData) -> List[Poly]:
    """Generators of ``(J, x2^2, x3, .., xd)^[q]``."""
    q = data.q
    x2, rest = data.params[1], data.params[2:]
    return [g ** q for g in data.J.J.gens] + [x2 ** (2 * q)] + [x ** q for x in rest]


def splitting_ideal_reduced(R: RingPresentation, data: SplittingData) -> Ideal:
    """``(J, x2^2, x3..xd)^[q] : (x2 u)^q``, using the parameters of ``data``."""
    if len(data.params) < 2:
        raise PreconditionError("the t-free formula needs dimension at least 2")
    Rx = R.quotient_by(data.extra) if data.extra else R
    x2 = data.params[1]
    return colon_by_product(Rx.ideal(_reduced_numerator(data)), [x2 ** data.q, data.socle_u ** data.q])


# ---------------------------------------------------------------------------
# colon identities


@dataclass
class ChainReport:
    ok: bool
    equalities: Dict[str, bool]
    failures: List[str]
    t_used: int
    seed: int

    def as_dict(self) -> dict:
        return {"ok": self.ok, "equalities": dict(sorted(self.equalities.items())),
                "failures": self.failures, "t_used": self.t_used, "seed": self.seed}


def _check_certificate_relation(data: SplittingData) -> None:
    R = data.J.R
    a = data.J.a
    x2 = data.params[1]
    target = R.ideal([a]).reduced()
    if not all(target.contains(x2 * g) for g in data.J.J.gens):
        raise PreconditionError("certificate relation x2*J ⊆ (a) fails")


def remove_x1_colons(R: RingPresentation, Jdiv: DivisorialIdeal, x1: Poly, ys: Sequence[Poly], q: int, t: int) -> Tuple[Ideal, Ideal]:
    """Both sides of ``((x1^(t-1)J)^[q], y) : x1^((t-1)q) = (J^[q], y)``."""
    lhs_num = R.ideal([(x1 ** (t - 1) * g) ** q for g in Jdiv.J.gens] + list(ys))
    lhs = colon_by_product(lhs_num, [x1 ** ((t - 1) * q)])
    rhs = R.ideal([g ** q for g in Jdiv.J.gens] + list(ys)).reduced()
    return lhs, rhs


def g1_colons(R: RingPresentation, Jdiv: DivisorialIdeal, Jsym: Ideal, x2: Poly, ys: Sequence[Poly],
                    q: int, N: int) -> List[Ideal]:
    """The four colon ideals that agree when ``x2 J ⊆ (a)``."""
    Jb = [g ** q for g in Jdiv.J.gens]
    A1 = colon_by_product(R.ideal(Jb + [x2 ** (N * q)] + list(ys)), [x2 ** ((N - 1) * q)])
    A2 = colon_by_product(R.ideal(list(Jsym.gens) + [x2 ** (N * q)] + list(ys)), [x2 ** ((N - 1) * q)])
    A3 = colon_by_product(R.ideal(list(Jsym.gens) + [x2 ** (2 * q)] + list(ys)), [x2 ** q])
    A4 = colon_by_product(R.ideal(Jb + [x2 ** (2 * q)] + list(ys)), [x2 ** q])
    return [A1, A2, A3, A4]


def colon_chain_check(R: RingPresentation, J: Optional[DivisorialIdeal] = None, e: int = 1, seed: int = 0,
                      data: Optional[SplittingData] = None, n_values: Sequence[int] = (2, 3)) -> ChainReport:
    """Evaluate every ideal in the parameter-colon chain and report the
    pairwise equalities."""
    if data is None:
        data = splitting_ideal(R, J, e, seed)
    if len(data.params) < 2:
        raise PreconditionError("the colon chain needs dimension at least 2")
    _check_certificate_relation(data)
    q = data.q
    x1, x2, rest = data.params[0], data.params[1], data.params[2:]
    u = data.socle_u
    Jd = data.J
    Jsym = symbolic_power(Jd, q)
    eq: Dict[str, bool] = {}
    rng = random.Random(seed + 17)

    # removing x1, for the chain parameters and for a random parameter system
    for t in sorted({2, data.t_used + 1}):
        ys = [x ** (t * q) for x in data.params[1:]]
        lhs, rhs = remove_x1_colons(R, Jd, x1, ys, q, t)
        eq[f"remove_x1[t={t},chain]"] = lhs == rhs
    ys = _grow_parameters(R, [x1], len(data.params) - 1, rng)
    lhs, rhs = remove_x1_colons(R, Jd, x1, ys, q, 2)
    eq["remove_x1[t=2,random]"] = lhs == rhs

    # the four colon ideals, for parameters y3..yd on R/(x1, x2)
    ysets = {"chain": [x ** q for x in rest]}
    if rest:
        ysets["random"] = _grow_parameters(R, [x1, x2], len(rest), rng)
    for label, ys in ysets.items():
        for N in n_values:
            A = g1_colons(R, Jd, Jsym, x2, ys, q, N)
            for i in range(3):
                eq[f"g1_colon[N={N},{label}]:{i + 1}={i + 2}"] = A[i] == A[i + 1]

    # the splitting-ideal chain
    t = data.t_used
    C1 = data.Ie
    C2 = colon_by_product(R.ideal([g ** q for g in Jd.J.gens] + [x ** (t * q) for x in data.params[1:]]),
                          [x ** ((t - 1) * q) for x in data.params[1:] if t > 1] + [u ** q])
    C3 = colon_by_product(R.ideal(list(Jsym.gens) + [x2 ** (2 * q)] + [x ** (t * q) for x in rest]),
                          [x ** ((t - 1) * q) for x in rest if t > 1] + [(x2 * u) ** q])
    C4 = colon_by_product(R.ideal(list(Jsym.gens) + [x ** q for x in data.params[1:]]), [u ** q])
    C5 = splitting_ideal_reduced(R, data)
    chain = [C1, C2, C3, C4, C5]
    for i in range(4):
        eq[f"chain:{i + 1}={i + 2}"] = chain[i] == chain[i + 1]
    failures = sorted(k for k, v in eq.items() if not v)
    return ChainReport(not failures, eq, failures, t, seed)


# ---------------------------------------------------------------------------
# the perturbation shortcut


@dataclass
class ShortcutResult:
    outcome: str                  # "equal", "unequal", "hypothesis not met" or "parameters not met"
    strengthened: bool            # eps in A^[q] + m*f + Q, a sufficient condition for equality
    perturbed_proper: Optional[bool] = None
    unperturbed_proper: Optional[bool] = None

    @property
    def equal(self) -> bool:
        return self.outcome == "equal"

    def as_dict(self) -> dict:
        return {"outcome": self.outcome, "strengthened": self.strengthened,
                "perturbed_proper": self.perturbed_proper, "unperturbed_proper": self.unperturbed_proper}


def deformation_data(R: RingPresentation, f: Poly, e: int = 1, seed: int = 0,
                     J: Optional[DivisorialIdeal] = None) -> SplittingData:
    """Splitting data of ``R/(f)`` built from a canonical ideal of ``R``:
    ``x1 ∈ J`` regular on ``R`` and ``R/(f)``, ``x2..xd`` parameters on
    ``R/(x1, f)`` and ``u`` a socle generator of ``R/(J, x2..xd, f)``."""
    if not R.is_nonzerodivisor(f):
        raise PreconditionError("f is a zero-divisor on R")
    if J is None:
        J = canonical_ideal(R, seed=seed, avoid=f)
    s = _setup(R, J, seed, [f])
    q = R.p ** e
    return SplittingData(e, s.params, s.u, 0, Ideal(R.ring, []), s.J, [f], s.note)


def shortcut_colon(data: SplittingData, g: Poly, local: bool = False) -> Ideal:
    """``((J, x2^2, x3..xd)^[q], g) : (x2 u)^q`` in ``R``.

    With ``local=True`` the numerator is first replaced by its component
    primary to the ideal of all variables, which gives the localized colon
    (as an ideal primary to that maximal ideal) at a fraction of the cost
    for inhomogeneous ``g``.
    """
    num = _shortcut_numerator(data, g, local)
    return colon_by_product(num, [data.params[1] ** data.q, data.socle_u ** data.q])


def shortcut_size(data: SplittingData, g: Poly, limit: int = 100000) -> Optional[int]:
    """Colength of ``(J, x2^2, x3..xd)^[q] + (g)``, or None when it exceeds ``limit``
    or the ideal is not zero-dimensional."""
    G = data.J.R.ideal(_reduced_numerator(data) + [g]).gb()
    if not G.is_unit() and G.dimension() != 0:
        return None
    try:
        return len(G.standard_monomials(limit))
    except BudgetExceeded:
        return None


def _shortcut_numerator(data: SplittingData, g: Poly, local: bool) -> Ideal:
    R = data.J.R
    num = R.ideal(_reduced_numerator(data) + [g])
    if not local:
        return num
    # V(J, x2, .., x_d) is a union of lines through the origin, so g is a
    # parameter on it exactly when the numerator becomes zero-dimensional
    G = num.gb()
    if not G.is_unit() and G.dimension() != 0:
        raise PreconditionError("f + eps is not a parameter modulo (J, x2, .., x_d)")
    comp = primary_component_at_origin(num, start=2 * data.q)
    if comp is None:
        raise BudgetExceeded("primary component at the origin not found")
    return comp[0]


def epsilon_shortcut_check(R: RingPresentation, data: SplittingData, eps: Poly,
                           base: Optional[Ideal] = None, method: str = "colength") -> ShortcutResult:
    """Compare the perturbed and unperturbed colon ideals (localized at the
    ideal of all variables) when ``eps ∈ (J, x2^2, x3..xd, f) + Q``.

    ``method="colength"`` checks ``base ⊆ perturbed`` plus equal colengths;
    ``method="colon"`` computes the perturbed colon and compares Groebner bases.
    """
    if method not in ("colength", "colon"):
        raise ValueError(f"unknown method {method!r}")
    if len(data.params) < 2:
        raise PreconditionError("the shortcut needs dimension at least 2 after cutting by f")
    f = data.extra[0]
    x2, rest = data.params[1], data.params[2:]
    hyp = R.ideal(list(data.J.J.gens) + [x2 ** 2] + rest + [f])
    num = R.ideal(_reduced_numerator(data))
    m_f = [x * f for x in R.ring.gens()]
    strong = num.add_gens(m_f).contains(eps) if eps else True
    if eps and not hyp.contains(eps):
        return ShortcutResult("hypothesis not met", strong)
    if base is None:
        base = shortcut_colon(data, f)
    if not eps:
        return ShortcutResult("equal", strong, is_proper_at_origin(base), is_proper_at_origin(base))
    try:
        num = _shortcut_numerator(data, f + eps, local=True)
    except PreconditionError:
        return ShortcutResult("parameters not met", strong)
    h = (x2 * data.socle_u) ** data.q
    if method == "colength" and primary_exponent(base) is not None:
        same = colon_equals(num, h, base)
        pert_proper = not num.contains(h)
    else:
        pert = colon_by_product(num, [x2 ** data.q, data.socle_u ** data.q])
        same = local_equal(pert, base)
        pert_proper = is_proper_at_origin(pert)
    return ShortcutResult("equal" if same else "unequal", strong, pert_proper, is_proper_at_origin(base))

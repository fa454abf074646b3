"""Deformation consistency checks and m-adic stability scans over catalog entries."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..divisorial import (
    CertificateError,
    LinkageError,
    PreconditionError,
    RingPresentation,
    canonical_ideal,
    qgor_index,
)
from ..fsingular import (
    SocleError,
    deformation_data,
    epsilon_shortcut_check,
    fedder_colon,
    fedder_is_fpure,
    shortcut_colon,
    shortcut_size,
)
from ..groebner import BudgetExceeded
from ..idealops import ARTINIAN_LIMIT
from ..polycore import Poly, monomials_of_degree
from .dsl import CatalogEntry

log = logging.getLogger(__name__)

REQUIRED_DEFORM = ("G1", "S2")
REQUIRED_STABILITY = ("CM", "G1", "S2")

CONSISTENT = "CONSISTENT"
UNMET = "HYPOTHESES-UNMET"
CANDIDATE = "COUNTEREXAMPLE-CANDIDATE"
DIVISIBILITY = "DIVISIBILITY-VIOLATION"


def _index(R: RingPresentation, n_max: int, seed: int) -> Optional[int]:
    try:
        return qgor_index(canonical_ideal(R, seed=seed), n_max=n_max, seed=seed)
    except (LinkageError, CertificateError, PreconditionError) as exc:
        log.info("index computation failed for %s: %s", R.name, exc)
        return None


@dataclass
class DeformReport:
    name: str
    p: int
    status: str
    quotient_fpure: bool
    ring_fpure: bool
    quotient_witness: Optional[str]
    ring_witness: Optional[str]
    index_ring: Optional[int]
    index_quotient: Optional[int]
    divides: Optional[bool]
    hypotheses_asserted: bool
    banner: str = ""
    expected_mismatches: List[str] = field(default_factory=list)
    homogeneous: bool = True

    @property
    def fatal(self) -> bool:
        return self.status in (CANDIDATE, DIVISIBILITY)

    def as_dict(self) -> dict:
        return {
            "name": self.name, "p": self.p, "status": self.status,
            "quotient_fpure": self.quotient_fpure, "ring_fpure": self.ring_fpure,
            "quotient_witness": self.quotient_witness, "ring_witness": self.ring_witness,
            "index_ring": self.index_ring, "index_quotient": self.index_quotient,
            "divides": self.divides, "hypotheses_asserted": self.hypotheses_asserted,
            "banner": self.banner, "expected_mismatches": list(self.expected_mismatches),
            "homogeneous": self.homogeneous,
        }


def _expect(entry: CatalogEntry, key: str, value, out: List[str]) -> None:
    if key in entry.expected and entry.expected[key] != value:
        out.append(f"{key}: expected {entry.expected[key]!r}, got {value!r}")


def deform_check(entry: CatalogEntry, n_max: int = 6, seed: int = 0) -> DeformReport:
    """Compare F-purity of ``R/(f)`` and ``R`` and the indices up and down."""
    if entry.f is None:
        raise PreconditionError(f"{entry.name}: no designated f")
    R = entry.R
    Rf = R.quotient_by(entry.f, name=f"{entry.name}/(f)")
    down = fedder_is_fpure(Rf)
    up = fedder_is_fpure(R)
    asserted = all(entry.has(a) for a in REQUIRED_DEFORM)
    banner = "" if asserted else "unverified hypotheses: " + ", ".join(a for a in REQUIRED_DEFORM if not entry.has(a))
    i_up = _index(R, n_max, seed)
    i_down = _index(Rf, n_max, seed)
    divides = None
    if i_up is not None and i_down is not None:
        divides = i_up % i_down == 0
    if not down.is_fpure:
        status = UNMET
        banner = (banner + "; " if banner else "") + "hypotheses unmet (quotient not F-pure)"
    elif i_up is None:
        status = UNMET
        banner = (banner + "; " if banner else "") + f"Q-Gorenstein index not found <= {n_max}"
    elif not asserted:
        status = UNMET
    elif not up.is_fpure:
        status = CANDIDATE
    else:
        status = CONSISTENT
    if divides is False and asserted and down.is_fpure:
        status = DIVISIBILITY
    mism: List[str] = []
    _expect(entry, "fpure", up.is_fpure, mism)
    _expect(entry, "quotient_fpure", down.is_fpure, mism)
    _expect(entry, "index", i_up, mism)
    _expect(entry, "quotient_index", i_down, mism)
    return DeformReport(entry.name, R.p, status, down.is_fpure, up.is_fpure,
                        None if down.witness is None else str(down.witness),
                        None if up.witness is None else str(up.witness),
                        i_up, i_down, divides, asserted, banner, mism, entry.is_homogeneous())


# ---------------------------------------------------------------------------
# stability


@dataclass
class SampleResult:
    N: int
    eps: str
    fpure: bool
    shortcut: Optional[str] = None       # outcome of the shortcut check, None if not run
    strengthened: Optional[bool] = None
    cross_ok: Optional[bool] = None

    def as_dict(self) -> dict:
        return {"N": self.N, "eps": self.eps, "fpure": self.fpure, "shortcut": self.shortcut,
                "strengthened": self.strengthened, "cross_ok": self.cross_ok}


@dataclass
class LevelResult:
    N: int
    samples: List[SampleResult]

    @property
    def passes(self) -> int:
        return sum(s.fpure for s in self.samples)

    @property
    def failures(self) -> List[str]:
        return [s.eps for s in self.samples if not s.fpure]

    def as_dict(self) -> dict:
        return {"N": self.N, "count": len(self.samples), "fpure_count": self.passes,
                "failures": self.failures, "samples": [s.as_dict() for s in self.samples]}


@dataclass
class StabilityReport:
    name: str
    p: int
    e: int
    f: str
    seed: int
    quotient_fpure: bool
    levels: List[LevelResult]
    shortcut_applicable: bool
    complete: bool = True
    note: str = ""
    homogeneous: bool = True

    @property
    def minimal_stable_N(self) -> Optional[int]:
        """Least sampled ``N`` with no failures (a sampled estimate, not a proof)."""
        for lv in self.levels:
            if not lv.failures:
                return lv.N
        return None

    @property
    def stable_from(self) -> Optional[int]:
        """Least ``N`` from which every sampled level passes."""
        out = None
        for lv in reversed(self.levels):
            if lv.failures:
                break
            out = lv.N
        return out

    @property
    def anomalies(self) -> List[int]:
        """Levels ``N`` that fail although some earlier level passed completely."""
        seen_pass = False
        out = []
        for lv in self.levels:
            if lv.failures and seen_pass:
                out.append(lv.N)
            if not lv.failures:
                seen_pass = True
        return out

    def shortcut_records(self) -> List[SampleResult]:
        return [s for lv in self.levels for s in lv.samples if s.shortcut not in (None, "hypothesis not met", "parameters not met")]

    @property
    def shortcut_failures(self) -> List[str]:
        return [s.eps for s in self.shortcut_records() if s.shortcut != "equal"]

    @property
    def cross_failures(self) -> List[str]:
        return [s.eps for lv in self.levels for s in lv.samples if s.cross_ok is False]

    def as_dict(self) -> dict:
        return {
            "name": self.name, "p": self.p, "e": self.e, "f": self.f, "seed": self.seed,
            "quotient_fpure": self.quotient_fpure, "complete": self.complete, "note": self.note,
            "homogeneous": self.homogeneous,
            "shortcut_applicable": self.shortcut_applicable,
            "minimal_stable_N": self.minimal_stable_N, "stable_from": self.stable_from,
            "monotonicity_anomalies": self.anomalies,
            "shortcut_checked": len(self.shortcut_records()),
            "shortcut_failures": self.shortcut_failures,
            "cross_validation_failures": self.cross_failures,
            "levels": [lv.as_dict() for lv in self.levels],
        }


def sample_epsilons(ring, N: int, cap: int, samples: int, rng: random.Random) -> List[Poly]:
    """All degree-``N`` monomials (seeded subsample above ``cap``) followed by
    ``samples`` random two-term combinations of monomials of degree ``N`` or ``N+1``."""
    monos = sorted(monomials_of_degree(ring.nvars, N), reverse=True)
    if len(monos) > cap:
        monos = sorted(rng.sample(monos, cap), reverse=True)
    out = [ring.monomial(m) for m in monos]
    pool = monos + sorted(monomials_of_degree(ring.nvars, N + 1), reverse=True)
    for _ in range(samples):
        m1, m2 = rng.sample(pool, 2) if len(pool) > 1 else (pool[0], pool[0])
        c1, c2 = rng.randrange(1, ring.p), rng.randrange(1, ring.p)
        eps = ring.monomial(m1).scale(c1) + ring.monomial(m2).scale(c2)
        if eps:
            out.append(eps)
    return out


def stability_scan(entry: CatalogEntry, e: int = 1, N_max: int = 6, samples_per_N: int = 4, seed: int = 0,
                   monomial_cap: int = 200, shortcut: bool = True,
                   shortcut_limit: int = ARTINIAN_LIMIT) -> StabilityReport:
    """Sample ``eps ∈ m^N`` and test F-purity of ``S/(Q, f + eps)`` for ``N = 1..N_max``.

    The perturbed-colon check is skipped (with a note) when the numerator of the
    colon has colength above ``shortcut_limit``, since each check then needs
    several large Groebner bases.
    """
    if entry.f is None:
        raise PreconditionError(f"{entry.name}: no designated f")
    R, f = entry.R, entry.f
    rng = random.Random(seed)
    Rf = R.quotient_by(f)
    q_fpure = fedder_is_fpure(Rf).is_fpure
    base_colon = fedder_colon(R) if R.Q.gens else None
    witnesses = [R.ring.one()] if base_colon is None else sorted(base_colon.gens, key=lambda g: (g.degree(), len(g)))[:4]

    data = None
    base = None
    note = []
    if shortcut and Rf.dim >= 2:
        try:
            data = deformation_data(R, f, e, seed=seed)
            size = shortcut_size(data, f, shortcut_limit)
            if size is None:
                note.append(f"shortcut skipped: colon numerator colength above {shortcut_limit}")
                data = None
            else:
                base = shortcut_colon(data, f)
        except (PreconditionError, SocleError, CertificateError, LinkageError) as exc:
            note.append(f"shortcut setup failed: {exc}")
            data = None
    elif shortcut:
        note.append("shortcut needs dim R/(f) >= 2")

    levels: List[LevelResult] = []
    complete = True
    try:
        for N in range(1, N_max + 1):
            results = []
            for eps in sample_epsilons(R.ring, N, monomial_cap, samples_per_N, rng):
                g = f + eps
                if not g:
                    continue
                Re = RingPresentation(R.ring, list(R.Q.gens) + [g])
                cands = [g ** (R.p - 1) * w for w in witnesses]
                ok = fedder_is_fpure(Re, cands).is_fpure
                rec = SampleResult(N, str(eps), ok)
                if data is not None:
                    res = epsilon_shortcut_check(R, data, eps, base=base)
                    rec.shortcut = res.outcome
                    rec.strengthened = res.strengthened
                    if res.equal and q_fpure:
                        rec.cross_ok = ok
                results.append(rec)
            levels.append(LevelResult(N, results))
    except BudgetExceeded as exc:
        complete = False
        note.append(str(exc))
    return StabilityReport(entry.name, R.p, e, str(f), seed, q_fpure, levels, data is not None,
                           complete, "; ".join(note), entry.is_homogeneous())

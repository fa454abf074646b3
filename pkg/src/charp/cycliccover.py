"""Cyclic covers ``⊕_{i<n} J^(i) t^i`` of torsion height-one classes,
presented by elimination from a graph ideal."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .divisorial import (
    DivisorialIdeal,
    PreconditionError,
    RingPresentation,
    canonical_ideal,
    find_certificate,
    is_principal_mod_Q,
    qgor_index,
    symbolic_power,
)
from .fsingular import fedder_is_fpure
from .groebner import buchberger
from .idealops import Ideal, eliminate
from .polycore import MonomialOrder, Poly, PolyRing

log = logging.getLogger(__name__)


class CoverError(RuntimeError):
    pass


@dataclass
class CoverPresentation:
    base: RingPresentation
    divisor: DivisorialIdeal
    n: int
    u: Poly
    cover: RingPresentation              # full presentation in S[y], includes y_{n,u} - 1
    degree_map: Dict[str, Tuple[Poly, int]]
    unit_var: Optional[str]
    simplified: RingPresentation         # variables solved away, y_{n,u} = 1 substituted
    eliminated: List[str] = field(default_factory=list)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "u": str(self.u),
            "cover_vars": list(self.cover.vars),
            "cover_relations": [str(g) for g in self.cover.Q.gens],
            "simplified_vars": list(self.simplified.vars),
            "simplified_relations": [str(g) for g in self.simplified.Q.gens],
            "degree_map": {k: [str(g), i] for k, (g, i) in sorted(self.degree_map.items())},
        }


def minimal_generators(I: Ideal, R: RingPresentation) -> List[Poly]:
    """Drop generators lying in the ideal of the others modulo ``Q``."""
    gens = [g for g in I.reduced().gens if not R.Q.contains(g)]
    gens.sort(key=lambda g: (g.degree(), len(g)))
    keep = list(gens)
    for g in sorted(gens, key=lambda g: (-g.degree(), -len(g))):
        others = [h for h in keep if h is not g]
        if R.ideal(others).contains(g):
            keep = others
    return keep


def _fresh(names: Sequence[str], want: str) -> str:
    taken = set(names)
    while want in taken:
        want += "_"
    return want


def build_cover(R: RingPresentation, D: DivisorialIdeal, n: int, seed: int = 0) -> CoverPresentation:
    """Cover attached to the class of ``D``, with ``D^(n)`` principal."""
    if n < 1:
        raise ValueError("n must be positive")
    if D.cert is None:
        D = find_certificate(D, seed=seed)
    if n == 1:
        return CoverPresentation(R, D, 1, R.ring.one(), R, {}, None, R, [])
    Jn = symbolic_power(D, n)
    u = is_principal_mod_Q(Jn, R, seed=seed)
    if u is None:
        raise CoverError(f"symbolic power {n} is not principal (no generator found)")

    gen_lists: List[List[Poly]] = []
    for i in range(1, n):
        gi = minimal_generators(symbolic_power(D, i), R)
        gen_lists.append(gi)
    gen_lists.append([u])

    ynames: List[str] = []
    degree_map: Dict[str, Tuple[Poly, int]] = {}
    base_names = list(R.vars)
    for i, gi in enumerate(gen_lists, start=1):
        for j, g in enumerate(gi, start=1):
            nm = _fresh(base_names + ynames, f"y{i}_{j}")
            ynames.append(nm)
            degree_map[nm] = (g, i)
    unit_var = ynames[-1]
    tname = _fresh(base_names + ynames, "t")

    # graph ring: t | y | x, eliminating t
    names = [tname] + ynames + base_names
    big = PolyRing(R.p, names, MonomialOrder("elim", 1))
    nx = len(base_names)
    shift = 1 + len(ynames)
    to_big = list(range(shift, shift + nx))
    t = big.gen(0)
    gens = [g.map_to(big, to_big) for g in R.Q.gens]
    for k, nm in enumerate(ynames):
        g, i = degree_map[nm]
        gens.append(big.gen(1 + k) - g.map_to(big, to_big) * t ** i)
    G = buchberger(gens, ring=big)
    P = [g for g in G if all(m[0] == 0 for m in g._d)]

    cov_ring = PolyRing(R.p, ynames + base_names, R.ring.order)
    cov_polys = [Poly(cov_ring, {m[1:]: c for m, c in g._d.items()}) for g in P]
    cov_polys.append(cov_ring.gen(cov_ring.index(unit_var)) - cov_ring.one())
    cover = RingPresentation(cov_ring, cov_polys, name=f"{R.name}_cover{n}")

    simplified, gone = simplify_presentation(cover, first=[unit_var])
    return CoverPresentation(R, D, n, u, cover, degree_map, unit_var, simplified, gone)


def _solvable(g: Poly, v: int) -> bool:
    """``g = c*x_v + h`` with ``h`` free of ``x_v`` and ``c`` a nonzero constant."""
    lin = [m for m in g._d if m[v]]
    if len(lin) != 1:
        return False
    m = lin[0]
    return m[v] == 1 and sum(m) == 1


def simplify_presentation(R: RingPresentation, first: Sequence[str] = ()) -> Tuple[RingPresentation, List[str]]:
    """Remove variables ``v`` for which ``v - h(others)`` lies in ``Q``."""
    cur = R
    gone: List[str] = []
    preferred = list(first)
    while True:
        G = list(cur.Q.gb())
        choice = None
        order = [cur.ring.index(v) for v in preferred if v in cur.vars]
        order += [i for i in reversed(range(cur.ring.nvars)) if i not in order]
        for v in order:
            for g in sorted(G, key=lambda g: len(g)):
                if _solvable(g, v):
                    choice = (v, g)
                    break
            if choice:
                break
        if choice is None:
            return cur, gone
        v, g = choice
        mono = next(m for m in g._d if m[v])
        c = g._d[mono]
        # x_v = -(g - c x_v)/c
        rest = g - cur.ring.gen(v).scale(c)
        value = rest.scale(-pow(c, -1, cur.p))
        keep = [i for i in range(cur.ring.nvars) if i != v]
        new_ring = PolyRing(cur.p, [cur.ring.names[i] for i in keep], cur.ring.order)
        pos = {old: new for new, old in enumerate(keep)}
        images = [new_ring.gen(pos[i]) if i != v else None for i in range(cur.ring.nvars)]
        val_img = value.map_to(new_ring, [pos.get(i, 0) for i in range(cur.ring.nvars)])
        images[v] = val_img
        new_gens = [h.subs(images, new_ring) for h in cur.Q.gens]
        gone.append(cur.ring.names[v])
        cur = RingPresentation(new_ring, [h for h in new_gens if h], name=cur.name)


def base_embedding_check(C: CoverPresentation) -> bool:
    """Eliminating the cover variables from the full presentation gives back ``Q``."""
    if C.n == 1:
        return True
    ring = C.cover.ring
    keep = [ring.index(v) for v in C.base.vars]
    E = eliminate(C.cover.Q, keep)
    back = Ideal(C.base.ring, [g.map_to(C.base.ring, [
        C.base.ring.index(ring.names[i]) if ring.names[i] in C.base.vars else 0 for i in range(ring.nvars)])
        for g in E.gens])
    return back == C.base.Q


def graded_piece_check(C: CoverPresentation) -> bool:
    """Degree pieces multiply correctly: for ``i + k = n`` the cover satisfies
    ``u * y_{i,j} * y_{k,l} = g_{i,j} * g_{k,l}`` (both sides equal
    ``g_{i,j} g_{k,l} u t^n`` with ``u t^n = 1``)."""
    if C.n == 1:
        return True
    ring = C.cover.ring
    to_cov = [ring.index(v) for v in C.base.vars]
    u = C.u.map_to(ring, to_cov)
    items = sorted(C.degree_map.items())
    for a, (ga, ia) in items:
        for b, (gb, ib) in items:
            if ia + ib != C.n or a > b:
                continue
            lhs = u * ring.gen(ring.index(a)) * ring.gen(ring.index(b))
            if not C.cover.Q.contains(lhs - (ga * gb).map_to(ring, to_cov)):
                return False
    return True


@dataclass
class IndexCheck:
    matches: bool
    found: Optional[int]
    expected: int
    status: str


def cover_index_check(C: CoverPresentation, m_expected: int, n_max: int = 6, seed: int = 0) -> IndexCheck:
    R = C.simplified
    D = canonical_ideal(R, seed=seed)
    found = qgor_index(D, n_max=n_max, seed=seed)
    if found is None:
        return IndexCheck(False, None, m_expected, f"not found <= {n_max}")
    return IndexCheck(found == m_expected, found, m_expected, "match" if found == m_expected else "mismatch")


def fpure_transfer_check(C: CoverPresentation) -> bool:
    return fedder_is_fpure(C.base).is_fpure == fedder_is_fpure(C.simplified).is_fpure

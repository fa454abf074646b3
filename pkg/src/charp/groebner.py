"""Buchberger's algorithm over F_p with Gebauer-Moeller pair elimination."""

from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import Monomial, MonomialOrder, Poly, PolyRing, StructuralError, inv_mod

MAX_BASIS = 5000
MAX_DEGREE = 2000


class BudgetExceeded(RuntimeError):
    """Raised instead of silently truncating a Groebner basis computation."""

    def __init__(self, what: str):
        super().__init__(f"computation budget exceeded: {what}")


@dataclass
class Budget:
    max_basis: int = MAX_BASIS
    max_degree: int = MAX_DEGREE


DEFAULT_BUDGET = Budget()


def _neg_key_function(order: MonomialOrder, nvars: int):
    """Heap key: smallest value is the largest monomial."""
    if order.kind == "lex":
        return lambda m: tuple(-e for e in m)
    if order.kind == "grevlex":
        return lambda m: (-sum(m),) + m[::-1]
    k = order.k

    def nk(m):
        a, b = m[:k], m[k:]
        return (-sum(a),) + a[::-1] + (-sum(b),) + b[::-1]

    return nk


def _mask(m: Monomial) -> int:
    r = 0
    for i, e in enumerate(m):
        if e:
            r |= 1 << i
    return r


class _Kernel:
    """Sparse dict polynomials with a fixed order; the hot loops live here."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.p = ring.p
        self.key = ring.key
        self.negkey = _neg_key_function(ring.order, ring.nvars)

    def sorted_terms(self, d: Dict[Monomial, int]) -> List[Tuple[Monomial, int]]:
        key = self.key
        return sorted(d.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, terms):
        p = self.p
        c0 = terms[0][1]
        if c0 == 1:
            return terms
        inv = inv_mod(c0, p)
        return [(m, c * inv % p) for m, c in terms]

    def reduce(self, d: Dict[Monomial, int], basis, tail: bool = True) -> Dict[Monomial, int]:
        """Normal form of ``d`` by ``basis`` (list of (lm, mask, terms) with monic terms)."""
        p = self.p
        negkey = self.negkey
        cur = dict(d)
        heap = [(negkey(m), m) for m in cur]
        heapq.heapify(heap)
        rem: Dict[Monomial, int] = {}
        add = operator.add
        while heap:
            _, m = heapq.heappop(heap)
            c = cur.pop(m, None)
            if c is None:
                continue
            mm = _mask(m)
            for lm, lmask, terms in basis:
                if lmask & ~mm:
                    continue
                if all(a <= b for a, b in zip(lm, m)):
                    q = tuple(map(operator.sub, m, lm))
                    for gm, gc in itertools.islice(terms, 1, None):
                        nm = tuple(map(add, gm, q))
                        old = cur.get(nm)
                        if old is None:
                            v = (-c * gc) % p
                            if v:
                                cur[nm] = v
                                heapq.heappush(heap, (negkey(nm), nm))
                        else:
                            v = (old - c * gc) % p
                            if v:
                                cur[nm] = v
                            else:
                                del cur[nm]
                    break
            else:
                rem[m] = c
                if not tail:
                    rem.update(cur)
                    return rem
        return rem


def _record(kernel: _Kernel, terms):
    lm = terms[0][0]
    return (lm, _mask(lm), terms)


def buchberger_raw(polys: Sequence[Dict[Monomial, int]], ring: PolyRing, budget: Budget = DEFAULT_BUDGET):
    """Reduced Groebner basis (list of monic sorted term lists) of dict polynomials."""
    K = _Kernel(ring)
    key = K.key
    p = K.p
    n = ring.nvars

    polys = [d for d in polys if d]
    if not polys:
        return []
    for d in polys:
        if len(d) == 1 and ring.zero_mono in d:
            return [[(ring.zero_mono, 1)]]

    G: List[Tuple[Monomial, int, list]] = []  # all records ever added
    sugar: List[int] = []
    active: List[int] = []
    pairs: List[Tuple[int, tuple, int, int]] = []  # (sugar, lcm key, i, j)

    def lcm(a, b):
        return tuple(map(max, a, b))

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    def update(h: int) -> None:
        nonlocal active, pairs
        lmh = G[h][0]
        cands = []
        for g in active:
            lmg = G[g][0]
            L = lcm(lmh, lmg)
            coprime = all(not (a and b) for a, b in zip(lmh, lmg))
            s = max(sugar[h] + sum(L) - sum(lmh), sugar[g] + sum(L) - sum(lmg))
            cands.append((g, L, coprime, s))
        D = []
        while cands:
            rec = cands.pop(0)
            g, L, coprime, s = rec
            if coprime or not any(divides(o[1], L) for o in itertools.chain(cands, D)):
                D.append(rec)
        E = [(s, key(L), g, h) for g, L, coprime, s in D if not coprime]
        kept = []
        for pr in pairs:
            _, _, i, j = pr
            Lij = lcm(G[i][0], G[j][0])
            if divides(lmh, Lij) and lcm(G[i][0], lmh) != Lij and lcm(G[j][0], lmh) != Lij:
                continue
            kept.append(pr)
        pairs = kept + E
        active = [g for g in active if not divides(lmh, G[g][0])] + [h]

    def add_poly(terms, s):
        if len(G) >= budget.max_basis:
            raise BudgetExceeded(f"more than {budget.max_basis} basis elements")
        deg = max(sum(m) for m, _ in terms)
        if deg > budget.max_degree:
            raise BudgetExceeded(f"polynomial degree {deg} above {budget.max_degree}")
        G.append(_record(K, terms))
        sugar.append(s)
        update(len(G) - 1)

    for d in sorted(polys, key=lambda d: max(key(m) for m in d)):
        basis = [G[i] for i in active]
        r = K.reduce(d, basis)
        if r:
            terms = K.monic(K.sorted_terms(r))
            if terms[0][0] == ring.zero_mono:
                return [[(ring.zero_mono, 1)]]
            add_poly(terms, max(sum(m) for m in r))

    while pairs:
        best = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        s, _, i, j = pairs[best]
        pairs[best] = pairs[-1]
        pairs.pop()
        lmi, _, ti = G[i]
        lmj, _, tj = G[j]
        L = lcm(lmi, lmj)
        qi = tuple(map(operator.sub, L, lmi))
        qj = tuple(map(operator.sub, L, lmj))
        sp: Dict[Monomial, int] = {}
        for m, c in ti[1:]:
            sp[tuple(map(operator.add, m, qi))] = c
        for m, c in tj[1:]:
            nm = tuple(map(operator.add, m, qj))
            v = (sp.get(nm, 0) - c) % p
            if v:
                sp[nm] = v
            else:
                sp.pop(nm, None)
        if not sp:
            continue
        basis = [G[a] for a in active]
        r = K.reduce(sp, basis)
        if r:
            terms = K.monic(K.sorted_terms(r))
            if terms[0][0] == ring.zero_mono:
                return [[(ring.zero_mono, 1)]]
            add_poly(terms, s)

    # active records are a minimal basis; interreduce tails
    recs = sorted((G[a] for a in active), key=lambda r: key(r[0]))
    out = []
    for idx, rec in enumerate(recs):
        others = recs[:idx] + recs[idx + 1:]
        lm, _, terms = rec
        tail = dict(terms[1:])
        red = K.reduce(tail, others) if tail else {}
        red[lm] = 1
        out.append(K.sorted_terms(red))
    return out


class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, sorted by increasing leading monomial."""

    def __init__(self, ring: PolyRing, elements: Sequence[Poly]):
        self.ring = ring
        self.order = ring.order
        self.elements: Tuple[Poly, ...] = tuple(elements)
        self._records = [
            (g.LM, _mask(g.LM), list(g.terms)) for g in self.elements
        ]
        self._kernel = _Kernel(ring)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and [g.dict for g in self.elements] == [g.dict for g in other.elements]
        )

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [r[0] for r in self._records]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].LM == self.ring.zero_mono

    def is_zero(self) -> bool:
        return not self.elements

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise StructuralError("polynomial and basis live in different rings")
        if not f:
            return f
        return Poly(self.ring, self._kernel.reduce(f._d, self._records))

    normal_form = reduce

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def dimension(self) -> Optional[int]:
        """Krull dimension of S/I; ``None`` for the unit ideal."""
        if self.is_unit():
            return None
        return combinatorial_dimension(self.leading_monomials, self.ring.nvars)

    def standard_monomials(self, limit: int = 100000) -> List[Monomial]:
        """Monomials outside the leading ideal (finite when zero-dimensional)."""
        if self.is_unit():
            return []
        if self.dimension() != 0:
            raise ValueError("quotient is not finite dimensional")
        lms = self.leading_monomials
        n = self.ring.nvars
        out = []
        frontier = [self.ring.zero_mono]
        seen = {self.ring.zero_mono}
        while frontier:
            m = frontier.pop()
            if any(all(a <= b for a, b in zip(lm, m)) for lm in lms):
                continue
            out.append(m)
            if len(out) > limit:
                raise BudgetExceeded("too many standard monomials")
            for i in range(n):
                nm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nm not in seen:
                    seen.add(nm)
                    frontier.append(nm)
        key = self.ring.key
        return sorted(out, key=key)


def combinatorial_dimension(lms: Sequence[Monomial], n: int) -> int:
    """Largest ``|U|`` such that no leading monomial is supported inside ``U``."""
    supports = {frozenset(i for i, e in enumerate(m) if e) for m in lms}
    # minimal supports suffice
    minimal = [s for s in supports if not any(t < s for t in supports)]
    if any(not s for s in minimal):
        return -1
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in minimal):
                return size
    return 0


def buchberger(gens: Sequence[Poly], order: Optional[MonomialOrder] = None,
               budget: Budget = DEFAULT_BUDGET, ring: Optional[PolyRing] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``gens`` (zeros are dropped)."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring.p != ring.p or g.ring.names != ring.names:
            raise StructuralError("generators live in different rings")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    raw = buchberger_raw([g._d for g in gens if g], ring, budget)
    return GroebnerBasis(ring, [Poly(ring, dict(t)) for t in raw])


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.ring.names != G.ring.names or f.ring.p != G.ring.p:
        raise StructuralError("polynomial and basis live in different rings")
    if f.ring != G.ring:
        f = Poly(G.ring, f._d)
    return G.reduce(f)


def ideal_member(f: Poly, G: GroebnerBasis) -> bool:
    return not normal_form(f, G)


def quotient_dimension(G: GroebnerBasis) -> Optional[int]:
    """Krull dimension of ``S/<G>``; ``None`` flags the unit ideal."""
    return G.dimension()


def divide(f: Poly, divisors: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Multivariate division: ``f = sum q_i d_i + r`` with no term of ``r``
    divisible by a leading term of the ``d_i``."""
    ring = f.ring
    K = _Kernel(ring)
    p = ring.p
    recs = []
    for d in divisors:
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        recs.append((d.LM, d.LC, list(d.terms)))
    quots: List[Dict[Monomial, int]] = [{} for _ in divisors]
    cur = dict(f._d)
    heap = [(K.negkey(m), m) for m in cur]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = cur.pop(m, None)
        if c is None:
            continue
        for idx, (lm, lc, terms) in enumerate(recs):
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(map(operator.sub, m, lm))
                qc = c * inv_mod(lc, p) % p
                quots[idx][q] = (quots[idx].get(q, 0) + qc) % p
                for gm, gc in terms[1:]:
                    nm = tuple(map(operator.add, gm, q))
                    old = cur.get(nm)
                    v = ((old or 0) - qc * gc) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (K.negkey(nm), nm))
                        cur[nm] = v
                    elif old is not None:
                        del cur[nm]
                break
        else:
            rem[m] = c
    return [ring.from_dict(q) for q in quots], Poly(ring, rem)

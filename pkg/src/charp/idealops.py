"""Ideals of F_p[x_1..x_n]: sums, products, bracket powers, colons,
saturation, intersection, elimination and height."""

from __future__ import annotations

import itertools
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .artinian import ArtinianQuotient
from .groebner import Budget, BudgetExceeded, DEFAULT_BUDGET, GroebnerBasis, buchberger
from .polycore import MonomialOrder, Poly, PolyRing, StructuralError


class Ideal:
    """Generators plus a lazily computed reduced Groebner basis per order."""

    def __init__(self, ring: PolyRing, gens: Iterable[Poly] = ()):
        self.ring = ring
        gl = []
        for g in gens:
            if g.ring != ring:
                if g.ring.names == ring.names and g.ring.p == ring.p:
                    g = Poly(ring, g._d)
                else:
                    raise StructuralError("generator from a different ring")
            if g:
                gl.append(g)
        self.gens: Tuple[Poly, ...] = tuple(gl)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    # construction helpers ------------------------------------------------
    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        """The irrelevant ideal generated by all variables."""
        return cls(ring, ring.gens())

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    # Groebner data ---------------------------------------------------------
    def gb(self, order: Optional[MonomialOrder] = None, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
        order = order or self.ring.order
        cached = self._gb.get(order)
        if cached is None:
            with self._lock:
                cached = self._gb.get(order)
                if cached is None:
                    cached = buchberger(self.gens, order, budget, ring=self.ring)
                    self._gb[order] = cached
        return cached

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced Groebner basis."""
        G = self.gb()
        out = Ideal(self.ring, G.elements)
        out._gb[self.ring.order] = G
        return out

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            f = Poly(self.ring, f._d)
        return self.gb().contains(f)

    __contains__ = contains

    def reduce(self, f: Poly) -> Poly:
        return self.gb().reduce(f)

    def issubset(self, other: "Ideal") -> bool:
        G = other.gb()
        return all(G.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.gb() == other.gb()

    def __hash__(self):
        return hash(tuple(g for g in self.gb()))

    def dimension(self) -> Optional[int]:
        return self.gb().dimension()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other) -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other) -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def add_gens(self, polys: Iterable[Poly]) -> "Ideal":
        return Ideal(self.ring, list(self.gens) + list(polys))


def _check(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        raise StructuralError("ideals live in different rings")


def _as_ideal(ring: PolyRing, x) -> Ideal:
    if isinstance(x, Ideal):
        return x
    if isinstance(x, Poly):
        return Ideal(ring, [x])
    return Ideal(ring, list(x))


def ideal_sum(I: Ideal, J) -> Ideal:
    J = _as_ideal(I.ring, J)
    _check(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J) -> Ideal:
    J = _as_ideal(I.ring, J)
    _check(I, J)
    prods = {}
    for f in I.gens:
        for g in J.gens:
            h = f * g
            prods[frozenset(h._d.items())] = h
    return Ideal(I.ring, prods.values())


def ideal_power(I: Ideal, n: int) -> Ideal:
    """``I^n``; ``I^0`` is the unit ideal."""
    if n < 0:
        raise ValueError("negative ideal power")
    if n == 0:
        return Ideal.unit(I.ring)
    gens = I.gens
    out = {}
    for combo in itertools.combinations_with_replacement(range(len(gens)), n):
        h = I.ring.one()
        for i in combo:
            h = h * gens[i]
        if h:
            out[frozenset(h._d.items())] = h
    return Ideal(I.ring, out.values())


def bracket_power(I: Ideal, e: int) -> Ideal:
    """``I^[p^e]``: generated by the ``p^e``-th powers of the generators."""
    if e < 0:
        raise ValueError("e must be non-negative")
    return Ideal(I.ring, [g.frobenius(e) for g in I.gens])


# ---------------------------------------------------------------------------
# elimination machinery


def _elimination_ring(ring: PolyRing, extra: Sequence[str]) -> PolyRing:
    names = list(extra)
    taken = set(ring.names)
    for i, nm in enumerate(names):
        while nm in taken:
            nm = nm + "_"
        names[i] = nm
        taken.add(nm)
    return PolyRing(ring.p, tuple(names) + ring.names, MonomialOrder("elim", len(names)))


def _lift(f: Poly, big: PolyRing, shift: int) -> Poly:
    return Poly(big, {(0,) * shift + m: c for m, c in f._d.items()})


def _drop(f: Poly, ring: PolyRing, shift: int) -> Poly:
    return Poly(ring, {m[shift:]: c for m, c in f._d.items()})


def eliminate(I: Ideal, keep: Sequence[int | str], budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """``I`` intersected with the subring in the ``keep`` variables (returned
    as an ideal of the full ring)."""
    ring = I.ring
    keep_idx = sorted(ring.index(k) if isinstance(k, str) else k for k in keep)
    drop_idx = [i for i in range(ring.nvars) if i not in keep_idx]
    if not drop_idx:
        return I
    perm = drop_idx + keep_idx
    big = PolyRing(ring.p, tuple(ring.names[i] for i in perm), MonomialOrder("elim", len(drop_idx)))
    pos = {old: new for new, old in enumerate(perm)}
    lifted = [g.map_to(big, [pos[i] for i in range(ring.nvars)]) for g in I.gens]
    G = buchberger(lifted, budget=budget, ring=big)
    k = len(drop_idx)
    out = []
    for g in G:
        if all(not any(m[:k]) for m in g._d):
            out.append(g.map_to(ring, [perm[j] for j in range(ring.nvars)]))
    return Ideal(ring, out)


def ideal_intersect(I: Ideal, J, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """``I ∩ J`` by eliminating ``w`` from ``wI + (1-w)J``."""
    J = _as_ideal(I.ring, J)
    _check(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = _elimination_ring(ring, ["w"])
    w = big.gen(0)
    gens = [w * _lift(f, big, 1) for f in I.gens]
    gens += [(big.one() - w) * _lift(g, big, 1) for g in J.gens]
    G = buchberger(gens, budget=budget, ring=big)
    return Ideal(ring, [_drop(g, ring, 1) for g in G if all(m[0] == 0 for m in g._d)])


ARTINIAN_LIMIT = 1200


def _artinian(I: Ideal):
    """Linear-algebra model of ``S/I`` when it is small and finite dimensional."""
    G = I.gb()
    if G.is_unit() or G.dimension() != 0:
        return None
    if ARTINIAN_LIMIT * (I.ring.p - 1) ** 2 >= 2 ** 62:
        return None
    try:
        return ArtinianQuotient(I, limit=ARTINIAN_LIMIT)
    except BudgetExceeded:
        return None


def quotient_by_element(I: Ideal, g: Poly, budget: Budget = DEFAULT_BUDGET, method: str = "auto") -> Ideal:
    """``(I : g)`` as ``(I ∩ (g)) / g``, or for zero-dimensional ``I`` as ``I``
    plus the kernel of multiplication by ``g`` on ``S/I``.

    ``method`` is ``"auto"``, ``"intersect"`` or ``"linear"``.
    """
    if method not in ("auto", "intersect", "linear"):
        raise ValueError(f"unknown colon method {method!r}")
    ring = I.ring
    if not g:
        return Ideal.unit(ring)
    if I.contains(g):
        return Ideal.unit(ring)
    if I.is_zero():
        return Ideal(ring, [])
    A = _artinian(I) if method != "intersect" else None
    if A is not None:
        return I.add_gens(A.annihilator_lifts(g))
    if method == "linear":
        raise ValueError("linear colon needs a zero-dimensional ideal")
    inter = ideal_intersect(I, Ideal(ring, [g]), budget)
    return Ideal(ring, [h.exact_div(g) for h in inter.gens])


def ideal_quotient(I: Ideal, J, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """``(I : J)`` as the intersection of ``(I : g)`` over generators ``g`` of ``J``."""
    J = _as_ideal(I.ring, J)
    _check(I, J)
    gens = [g for g in J.gens if not I.contains(g)]
    if not gens:
        return Ideal.unit(I.ring)
    out = None
    for g in gens:
        Q = quotient_by_element(I, g, budget)
        out = Q if out is None else ideal_intersect(out, Q, budget)
    return out.reduced()


def saturation(I: Ideal, g: Poly, budget: Budget = DEFAULT_BUDGET, method: str = "iterate") -> Tuple[Ideal, int]:
    """``(I : g^∞)`` and the first ``k`` with ``(I : g^k) = (I : g^(k+1))``."""
    if not g:
        raise ValueError("cannot saturate by zero")
    if method == "iterate":
        cur = I.reduced()
        k = 0
        while True:
            nxt = quotient_by_element(cur, g, budget).reduced()
            if nxt == cur:
                return cur, k
            cur = nxt
            k += 1
    if method == "rabinowitsch":
        ring = I.ring
        big = _elimination_ring(ring, ["v"])
        v = big.gen(0)
        gens = [_lift(f, big, 1) for f in I.gens] + [big.one() - v * _lift(g, big, 1)]
        G = buchberger(gens, budget=budget, ring=big)
        sat = Ideal(ring, [_drop(h, ring, 1) for h in G if all(m[0] == 0 for m in h._d)]).reduced()
        # stabilisation exponent is still found by iterating, bounded by the answer
        cur = I.reduced()
        k = 0
        while cur != sat:
            cur = quotient_by_element(cur, g, budget).reduced()
            k += 1
        return sat, k
    raise ValueError(f"unknown saturation method {method!r}")


def height(I: Ideal) -> int:
    """Height in the ambient polynomial ring: ``n - dim(S/I)``."""
    d = I.dimension()
    if d is None:
        raise ValueError("the unit ideal has no height")
    return I.ring.nvars - d


def local_containment(I: Ideal, J: Ideal) -> bool:
    """Whether ``I ⊆ J`` after localizing at the ideal of all variables."""
    _check(I, J)
    if I.issubset(J):
        return True
    C = ideal_quotient(J, I)
    return any(g.constant_coeff() for g in C.gb())


def primary_exponent(I: Ideal, cap: int = 4096) -> Optional[int]:
    """Least ``K`` with ``x_i^K ∈ I`` for every variable, or ``None`` if ``I``
    is not primary to the ideal of all variables."""
    G = I.gb()
    if G.is_unit():
        return 0
    if G.dimension() != 0 or not is_proper_at_origin(I):
        return None
    K = 0
    for i in range(I.ring.nvars):
        # the pure power of x_i among the leading monomials bounds the search
        pure = [m[i] for m in G.leading_monomials if sum(m) == m[i]]
        top = min(pure) if pure else cap
        k = 1
        xi = I.ring.gen(i)
        while k <= top and not G.contains(xi ** k):
            k += 1
        if k > top:
            return None
        K = max(K, k)
    return K


def primary_component_at_origin(I: Ideal, start: int = 1, cap: int = 400) -> Optional[Tuple[Ideal, int]]:
    """The component of ``I`` primary to the ideal of all variables, as
    ``I + (x_1^k, .., x_n^k)``, with the ``k`` used.

    ``I + M_k`` contains that component for every ``k`` and decreases to it;
    ``I + M_k = I + M_(k+1)`` forces ``M_k`` into the local ideal by Nakayama,
    so the first repeat is the answer. Returns ``None`` if no repeat shows up
    below ``cap`` (the origin is then not an isolated point of ``V(I)``).
    """
    if not is_proper_at_origin(I):
        return Ideal.unit(I.ring), 0
    ring = I.ring
    K = primary_exponent(I)
    if K:
        return I.reduced(), K
    A = _artinian(I)
    if A is not None:
        # exact exponent from the kernels of powers of each variable
        k = max(1, max(A.stable_exponent(i) for i in range(ring.nvars)))
        return I.add_gens([ring.gen(i) ** k for i in range(ring.nvars)]).reduced(), k
    k = max(1, start)
    prev = I.add_gens([ring.gen(i) ** k for i in range(ring.nvars)]).reduced()
    while k < cap:
        k2 = k + max(1, k // 2)
        cur = I.add_gens([ring.gen(i) ** k2 for i in range(ring.nvars)]).reduced()
        if cur == prev:
            return cur, k
        prev, k = cur, k2
    return None


def colength(I: Ideal) -> int:
    """``dim_k S/I`` for a zero-dimensional (or unit) ideal."""
    return len(I.gb().standard_monomials())


def colon_equals(I: Ideal, g: Poly, B: Ideal) -> bool:
    """Whether ``(I : g) = B`` for zero-dimensional ``I``, without computing the colon.

    ``B ⊆ (I : g)`` is checked by reducing ``g B`` modulo ``I``; equality then
    follows from ``dim S/(I : g) = dim S/I - dim S/(I + g)`` (multiplication
    by ``g`` gives ``0 → S/(I:g) → S/I → S/(I+g) → 0``).
    """
    _check(I, B)
    G = I.gb()
    if not G.is_unit() and G.dimension() != 0:
        raise ValueError("colon_equals needs a zero-dimensional ideal")
    if not all(G.contains(g * b) for b in B.gens):
        return False
    if not B.is_unit() and B.gb().dimension() != 0:
        return False
    return colength(I) - colength(I.add_gens([g])) == colength(B)


def local_equal(I: Ideal, J: Ideal) -> bool:
    """``I = J`` after localizing at the ideal of all variables.

    When one side is primary to that ideal, a single Groebner basis suffices:
    if ``x_i^K ∈ J`` for all ``i`` then ``I_m = J_m`` iff
    ``I + (x_i^(K+1)) = J`` (Nakayama plus comaximality of the other
    components of ``I``).
    """
    _check(I, J)
    for A, B in ((I, J), (J, I)):
        K = primary_exponent(B)
        if K:
            extra = [A.ring.gen(i) ** (K + 1) for i in range(A.ring.nvars)]
            return A.add_gens(extra) == B
    return local_containment(I, J) and local_containment(J, I)


def is_proper_at_origin(I: Ideal) -> bool:
    """``I`` is contained in the ideal of all variables."""
    return all(g.constant_coeff() == 0 for g in I.gb())

"""Independent reference computations used by the tests.

Nothing here touches the Groebner machinery of the package: polynomials are
plain ``{exponent tuple: coefficient}`` dicts.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

Mono = Tuple[int, ...]
PolyDict = Dict[Mono, int]


def pmul(f: PolyDict, g: PolyDict, p: int) -> PolyDict:
    out: PolyDict = {}
    for a, c in f.items():
        for b, d in g.items():
            m = tuple(x + y for x, y in zip(a, b))
            out[m] = (out.get(m, 0) + c * d) % p
    return {m: c for m, c in out.items() if c}


def ppow(f: PolyDict, n: int, nvars: int, p: int) -> PolyDict:
    out: PolyDict = {(0,) * nvars: 1}
    for _ in range(n):
        out = pmul(out, f, p)
    return out


def monomials_upto(nvars: int, d: int) -> List[Mono]:
    return [m for m in itertools.product(range(d + 1), repeat=nvars) if sum(m) <= d]


def _row_reduce(rows: List[Dict[int, int]], p: int) -> Dict[int, Dict[int, int]]:
    """Echelon form keyed by pivot column; rows are sparse dicts."""
    piv: Dict[int, Dict[int, int]] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = max(r)
            if c in piv:
                k = r[c]
                for j, v in piv[c].items():
                    r[j] = (r.get(j, 0) - k * v) % p
                    if not r[j]:
                        del r[j]
            else:
                inv = pow(r[c], -1, p)
                piv[c] = {j: v * inv % p for j, v in r.items()}
                break
    return piv


def in_span_upto(f: PolyDict, gens: Sequence[PolyDict], nvars: int, p: int, D: int) -> bool:
    """Whether ``f`` is an F_p-combination of ``m * g`` with ``deg(m g) <= D``.

    Membership in the ideal implies this for ``D`` large enough; for the
    small random ideals of the tests ``D`` is chosen generously.
    """
    monos = monomials_upto(nvars, D)
    col = {m: i for i, m in enumerate(sorted(monos, key=lambda m: (sum(m), m)))}
    rows = []
    for g in gens:
        dg = max(sum(m) for m in g)
        for m in monos:
            if sum(m) + dg > D:
                continue
            rows.append({col[tuple(a + b for a, b in zip(m, t))]: c for t, c in g.items()})
    piv = _row_reduce(rows, p)
    r = {col[m]: c % p for m, c in f.items() if c % p}
    while r:
        c = max(r)
        if c not in piv:
            return False
        k = r[c]
        for j, v in piv[c].items():
            r[j] = (r.get(j, 0) - k * v) % p
            if not r[j]:
                del r[j]
    return True


def fedder_hypersurface(f: PolyDict, nvars: int, p: int) -> bool:
    """``S/(f)`` is F-pure at the origin iff ``f^(p-1)`` has a monomial with
    every exponent below ``p`` (a monomial outside ``m^[p]``)."""
    return any(all(e < p for e in m) for m in ppow(f, p - 1, nvars, p))


def parse_simple(text: str, names: Sequence[str], p: int) -> PolyDict:
    """Tiny sum-of-terms parser: ``3*x^2*y - z + 1``. No parentheses."""
    out: PolyDict = {}
    text = text.replace(" ", "").replace("-", "+-")
    for term in filter(None, text.split("+")):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        coeff, exps = 1, [0] * len(names)
        for factor in term.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            base, _, e = factor.partition("^")
            exps[names.index(base)] += int(e) if e else 1
        m = tuple(exps)
        out[m] = (out.get(m, 0) + sign * coeff) % p
    return {m: c for m, c in out.items() if c}

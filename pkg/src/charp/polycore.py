"""Exact arithmetic over F_p: residues, monomial orders and sparse polynomials.

Monomials are exponent tuples; a polynomial is a mapping from monomials to
nonzero residues in ``[0, p)``.  Variable names are metadata only, every
internal identity is positional.
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]

MAX_EXPONENT = 2**31 - 1
MAX_PRIME = 2**31 - 1


class StructuralError(ValueError):
    """Operands that do not live in the same ring, or malformed shapes."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# F_p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("division by zero in F_p")
    return pow(a, -1, p)


@dataclass(frozen=True)
class FieldElem:
    """A residue class modulo a prime ``p``."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem) or other.p != self.p:
            raise StructuralError("field elements have different moduli")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.value * other.value, self.p)

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        return FieldElem(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElem(pow(self.value, n, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_arith(op: str, a: FieldElem, b: Optional[FieldElem] = None) -> FieldElem:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv`` on field elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``elim`` (block order, first ``k`` variables
    eliminated; grevlex inside each block)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination order needs a block size k >= 1")

    def key_function(self, nvars: int):
        """Return ``key`` with ``key(a) < key(b)`` iff ``a < b`` in this order."""
        if self.kind == "lex":
            return _identity
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.k
        if k > nvars:
            raise StructuralError("elimination block larger than the variable count")

        def elim_key(m, k=k):
            a, b = m[:k], m[k:]
            return (sum(a),) + tuple(-e for e in reversed(a)) + (sum(b),) + tuple(-e for e in reversed(b))

        return elim_key

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind


def _identity(m):
    return m


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_compare(order: MonomialOrder, m1: Sequence[int], m2: Sequence[int]) -> int:
    """Three-way comparison: 1 if ``m1 > m2``, -1 if smaller, 0 if equal."""
    if len(m1) != len(m2):
        raise StructuralError("monomials of different lengths")
    key = order.key_function(len(m1))
    a, b = key(tuple(m1)), key(tuple(m2))
    return (a > b) - (a < b)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def check_exponents(m: Monomial) -> Monomial:
    for e in m:
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds the supported width")
    return m


# ---------------------------------------------------------------------------
# Rings and polynomials


class PolyRing:
    """The polynomial ring F_p[vars] with a fixed monomial order."""

    def __init__(self, p: int, names: Sequence[str], order: MonomialOrder | str = GREVLEX):
        if not isinstance(p, int) or p > MAX_PRIME or not is_prime(p):
            raise ValueError("p must be prime")
        if isinstance(order, str):
            order = parse_order(order)
        names = tuple(names)
        if len(set(names)) != len(names):
            raise StructuralError("duplicate variable names")
        self.p = p
        self.names = names
        self.nvars = len(names)
        self.order = order
        self.key = order.key_function(self.nvars)
        self.zero_mono: Monomial = (0,) * self.nvars

    @property
    def tag(self):
        return (self.p, self.names, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={','.join(self.names)}, order={self.order})"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.p, self.names, order)

    def extend(self, front: Sequence[str] = (), back: Sequence[str] = (), order=None) -> "PolyRing":
        return PolyRing(self.p, tuple(front) + self.names + tuple(back), order or self.order)

    # constructors -------------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {self.zero_mono: c} if c else {})

    def gen(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): 1})

    def gens(self) -> List["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c: int = 1) -> "Poly":
        if len(exps) != self.nvars:
            raise StructuralError("exponent vector has the wrong length")
        c %= self.p
        return Poly(self, {check_exponents(tuple(exps)): c} if c else {})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r}") from None

    def from_dict(self, terms: Dict[Monomial, int]) -> "Poly":
        p = self.p
        return Poly(self, {m: c % p for m, c in terms.items() if c % p})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


class Poly:
    """Immutable sparse polynomial; ``terms`` iterates in decreasing order."""

    def __init__(self, ring: PolyRing, d: Dict[Monomial, int]):
        # d must already be reduced with no zero coefficients
        self.ring = ring
        self._d = d

    # introspection ------------------------------------------------------
    @property
    def dict(self) -> Dict[Monomial, int]:
        return dict(self._d)

    @cached_property
    def terms(self) -> Tuple[Tuple[Monomial, int], ...]:
        key = self.ring.key
        return tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    @property
    def LM(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def LC(self) -> int:
        return self.terms[0][1] if self._d else 0

    def degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def constant_coeff(self) -> int:
        return self._d.get(self.ring.zero_mono, 0)

    def support(self) -> set:
        """Indices of variables that occur."""
        s = set()
        for m in self._d:
            s.update(i for i, e in enumerate(m) if e)
        return s

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise StructuralError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, FieldElem):
            if other.p != self.ring.p:
                raise StructuralError("coefficient modulus mismatch")
            return self.ring.const(other.value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        d = dict(self._d)
        for m, c in other._d.items():
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(map(operator.add, m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        out = {m: c % p for m, c in acc.items() if c % p}
        for m in out:
            check_exponents(m)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c % p for m, v in self._d.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {tuple(map(operator.add, m, mono)): v * c % p for m, v in self._d.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Poly":
        if not self._d:
            return self
        return self.scale(inv_mod(self.LC, self.ring.p))

    def frobenius(self, e: int = 1) -> "Poly":
        """``self ** (p**e)`` computed term-wise."""
        if e < 0:
            raise ValueError("e must be non-negative")
        q = self.ring.p ** e
        p = self.ring.p
        # c^(p^e) = c in F_p, kept explicit for clarity of the contract
        out = {check_exponents(tuple(x * q for x in m)): pow(c, q, p) for m, c in self._d.items()}
        return Poly(self.ring, out)

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        from .groebner import divide

        quots, rem = divide(self, [other])
        if rem:
            raise ArithmeticError("division is not exact")
        return quots[0]

    def subs(self, images: Sequence["Poly"], target: Optional[PolyRing] = None) -> "Poly":
        """Substitute ``images[i]`` for variable ``i`` (images live in ``target``)."""
        target = target or self.ring
        if len(images) != self.ring.nvars:
            raise StructuralError("need one image per variable")
        out = target.zero()
        cache: Dict[Tuple[int, int], Poly] = {}
        for m, c in self._d.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    t = t * cache[(i, e)]
            out = out + t
        return out

    def map_to(self, target: PolyRing, positions: Sequence[int]) -> "Poly":
        """Move into ``target`` sending variable ``i`` to position ``positions[i]``."""
        n = target.nvars
        d = {}
        for m, c in self._d.items():
            nm = [0] * n
            for i, e in enumerate(m):
                if e:
                    nm[positions[i]] = e
            d[tuple(nm)] = c
        return Poly(target, d)

    def to_str(self) -> str:
        if not self._d:
            return "0"
        names = self.ring.names
        parts = []
        for m, c in self.terms:
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def poly_arith(op: str, f: Poly, g) -> Poly:
    """``add``, ``mul`` or ``scale`` (``g`` an integer for ``scale``)."""
    if op == "add":
        if not isinstance(g, Poly) or g.ring != f.ring:
            raise StructuralError("ring tag mismatch")
        return f + g
    if op == "mul":
        if not isinstance(g, Poly) or g.ring != f.ring:
            raise StructuralError("ring tag mismatch")
        return f * g
    if op == "scale":
        return f.scale(int(g))
    raise ValueError(f"unknown polynomial operation {op!r}")


def frobenius_power(f: Poly, e: int) -> Poly:
    return f.frobenius(e)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``d``."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        m = []
        for b in bars:
            m.append(b - prev - 1)
            prev = b
        m.append(d + nvars - 2 - prev)
        yield tuple(m)


def parse_order(text: str) -> MonomialOrder:
    text = text.strip()
    if text in ("grevlex", "lex"):
        return MonomialOrder(text)
    mt = re.fullmatch(r"elim(?:ination)?(?:-block)?\((\d+)\)", text)
    if mt:
        return MonomialOrder("elim", int(mt.group(1)))
    raise ValueError(f"unknown monomial order {text!r}")


# ---------------------------------------------------------------------------
# Polynomial text syntax


class PolySyntaxError(ValueError):
    def __init__(self, message: str, pos: int = 0):
        super().__init__(message)
        self.message = message
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[col]!r}", col)
        start = mt.start(mt.lastindex)
        if mt.group(1) is not None:
            tokens.append(("int", mt.group(1), start))
        elif mt.group(2) is not None:
            tokens.append(("ident", mt.group(2), start))
        else:
            op = mt.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_end(self):
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("ident", "int", "op") and val not in "+-*^)":
                raise PolySyntaxError("implicit multiplication is not allowed; write '*'", pos)
            raise PolySyntaxError(f"unexpected token {val!r}", pos)

    def expr(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            out = self.term()
            if val == "-":
                out = -out
        else:
            out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                out = out + t if val == "+" else out - t
            else:
                return out

    def term(self) -> Poly:
        out = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                out = out * self.power()
            elif kind in ("ident", "int") or (kind == "op" and val == "("):
                raise PolySyntaxError("implicit multiplication is not allowed; write '*'", pos)
            else:
                return out

    def power(self) -> Poly:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.power()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise PolySyntaxError("exponent must be a non-negative integer literal", pos)
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.next()
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "ident":
            if val not in self.ring.names:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            out = self.expr()
            kind, val, pos = self.next()
            if not (kind == "op" and val == ")"):
                raise PolySyntaxError("expected ')'", pos)
            return out
        if kind == "end":
            raise PolySyntaxError("unexpected end of polynomial", pos)
        raise PolySyntaxError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` (``+ - * ^``, integers, variable names) into ``ring``."""
    parser = _Parser(text, ring)
    out = parser.expr()
    parser.expect_end()
    return out


def polys_from_strings(ring: PolyRing, texts: Iterable[str]) -> List[Poly]:
    return [parse_poly(t, ring) for t in texts]

"""Flat key = value format for ring presentations and catalog entries.

Statements are separated by ``;`` or newlines (newlines inside ``[...]`` are
ignored; ``provenance`` runs to the end of its line). ``#`` starts a comment. Recognised keys::

    name = V3
    p = 2
    vars = a, b, c, d
    order = grevlex            # or lex, elim(k)
    Q = [a*c - b^2, a*d - b*c, b*d - c^2]
    f = z
    assertions = CM, G1, S2, J_pe_CM(1)
    expected = fpure:true, index:3
    nongor_prime = [a, b, c, d]      # repeatable
    provenance = free text
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..divisorial import RingPresentation
from ..idealops import Ideal
from ..polycore import Poly, PolyRing, PolySyntaxError, is_prime, parse_order, parse_poly

KNOWN_ASSERTIONS = ("CM", "equidimensional", "generically-Gorenstein", "G1", "S2")
_JPE = re.compile(r"J_pe_CM\((\d+)\)$")
KEYS = ("name", "p", "vars", "order", "Q", "f", "assertions", "expected", "nongor_prime", "provenance")


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "<text>"):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        super().__init__(f"{source}:{line}:{col}: {message}")


@dataclass
class CatalogEntry:
    name: str
    source: str
    R: RingPresentation
    f: Optional[Poly] = None
    assertions: Tuple[str, ...] = ()
    expected: Dict[str, object] = field(default_factory=dict)
    nongor_primes: List[Ideal] = field(default_factory=list)
    provenance: str = ""
    path: Optional[str] = None

    @property
    def p(self) -> int:
        return self.R.p

    def has(self, assertion: str) -> bool:
        return assertion in self.assertions

    def jpe_cm(self) -> List[int]:
        return sorted(int(m.group(1)) for a in self.assertions if (m := _JPE.match(a)))

    def is_homogeneous(self) -> bool:
        ok = self.R.is_homogeneous()
        return ok and (self.f is None or self.f.is_homogeneous())


@dataclass
class _Stmt:
    key: str
    value: str
    line: int
    col: int        # column of the first character of the value
    key_col: int = 1


def _statements(text: str, source: str) -> List[_Stmt]:
    out: List[_Stmt] = []
    buf: List[str] = []
    depth = 0
    line, col = 1, 1
    start = (1, 1)
    in_comment = False

    def flush():
        raw = "".join(buf)
        buf.clear()
        if not raw.strip():
            return
        lead = len(raw) - len(raw.lstrip())
        if "=" not in raw:
            raise DSLError("expected 'key = value'", start[0], start[1] + lead, source)
        key, value = raw.split("=", 1)
        if not key.strip():
            raise DSLError("missing key before '='", start[0], start[1] + lead, source)
        vcol = start[1] + len(key) + 1 + len(value) - len(value.lstrip(" \t"))
        out.append(_Stmt(key.strip(), value.strip(), start[0], vcol, start[1] + lead))

    for ch in text:
        if in_comment:
            if ch == "\n":
                in_comment = False
            else:
                col += 1
                continue
        if ch == "#":
            in_comment = True
            col += 1
            continue
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise DSLError("unbalanced ']'", line, col, source)
        free_text = ch == ";" and "".join(buf).lstrip().startswith("provenance")
        if depth == 0 and ch in ";\n" and not free_text:
            flush()
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            start = (line, col)
            continue
        if not buf:
            start = (line, col)
        buf.append(ch)
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    if depth:
        raise DSLError("unclosed '['", line, col, source)
    flush()
    return out


def _split_list(value: str) -> List[Tuple[str, int]]:
    """Comma-separated items with their offsets inside ``value``."""
    items = []
    depth = 0
    cur_start = 0
    for i, ch in enumerate(value):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append((value[cur_start:i], cur_start))
            cur_start = i + 1
    items.append((value[cur_start:], cur_start))
    out = []
    for raw, off in items:
        lead = len(raw) - len(raw.lstrip())
        if raw.strip():
            out.append((raw.strip(), off + lead))
    return out


def _bracketed(st: _Stmt, source: str) -> Tuple[str, int]:
    v = st.value
    if not (v.startswith("[") and v.endswith("]")):
        raise DSLError(f"{st.key} must be a bracketed list", st.line, st.col, source)
    return v[1:-1], 1


def _poly(text: str, ring: PolyRing, st: _Stmt, offset: int, source: str) -> Poly:
    try:
        return parse_poly(text, ring)
    except PolySyntaxError as exc:
        raise DSLError(exc.message, st.line, st.col + offset + exc.pos, source) from None


def _bool(text: str) -> object:
    low = text.lower()
    if low in ("true", "yes"):
        return True
    if low in ("false", "no"):
        return False
    if low in ("none", "null"):
        return None
    try:
        return int(text)
    except ValueError:
        return text


def parse_presentation(text: str, source: str = "<text>", check_f: bool = True) -> CatalogEntry:
    """Parse a presentation (and optional catalog fields)."""
    stmts = _statements(text, source)
    seen: Dict[str, _Stmt] = {}
    primes_st: List[_Stmt] = []
    for st in stmts:
        if st.key not in KEYS:
            raise DSLError(f"unknown key {st.key!r}", st.line, st.key_col, source)
        if st.key == "nongor_prime":
            primes_st.append(st)
            continue
        if st.key in seen:
            raise DSLError(f"duplicate key {st.key!r}", st.line, st.col, source)
        seen[st.key] = st
    for req in ("p", "vars"):
        if req not in seen:
            raise DSLError(f"missing required key {req!r}", 1, 1, source)

    pst = seen["p"]
    try:
        p = int(pst.value)
    except ValueError:
        raise DSLError("p must be an integer", pst.line, pst.col, source) from None
    if not is_prime(p):
        raise DSLError("p must be prime", pst.line, pst.col, source)

    vst = seen["vars"]
    names = [nm for nm, _ in _split_list(vst.value)]
    for nm, off in _split_list(vst.value):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
            raise DSLError(f"bad variable name {nm!r}", vst.line, vst.col + off, source)
    if len(set(names)) != len(names):
        raise DSLError("duplicate variable name", vst.line, vst.col, source)
    if not names:
        raise DSLError("at least one variable is required", vst.line, vst.col, source)

    order = "grevlex"
    if "order" in seen:
        ost = seen["order"]
        try:
            parse_order(ost.value)
        except ValueError as exc:
            raise DSLError(str(exc), ost.line, ost.col, source) from None
        order = ost.value
    ring = PolyRing(p, names, order)

    Q: List[Poly] = []
    if "Q" in seen:
        qst = seen["Q"]
        inner, off = _bracketed(qst, source)
        for item, ioff in _split_list(inner):
            Q.append(_poly(item, ring, qst, off + ioff, source))
    name = seen["name"].value if "name" in seen else os.path.splitext(os.path.basename(source))[0]
    try:
        R = RingPresentation(ring, Q, name=name)
    except ValueError as exc:
        st = seen.get("Q", vst)
        raise DSLError(str(exc), st.line, st.col, source) from None

    f = None
    if "f" in seen:
        fst = seen["f"]
        f = _poly(fst.value, ring, fst, 0, source)

    assertions: List[str] = []
    if "assertions" in seen:
        ast = seen["assertions"]
        for item, off in _split_list(ast.value):
            if item not in KNOWN_ASSERTIONS and not _JPE.match(item):
                raise DSLError(f"unknown assertion {item!r}", ast.line, ast.col + off, source)
            assertions.append(item)

    expected: Dict[str, object] = {}
    if "expected" in seen:
        est = seen["expected"]
        for item, off in _split_list(est.value):
            if ":" not in item:
                raise DSLError("expected items look like key:value", est.line, est.col + off, source)
            k, v = item.split(":", 1)
            expected[k.strip()] = _bool(v.strip())

    primes: List[Ideal] = []
    for st in primes_st:
        inner, off = _bracketed(st, source)
        gens = [_poly(item, ring, st, off + ioff, source) for item, ioff in _split_list(inner)]
        primes.append(Ideal(ring, gens))

    entry = CatalogEntry(name, text, R, f, tuple(assertions), expected, primes,
                         seen["provenance"].value if "provenance" in seen else "",
                         source if source != "<text>" else None)
    if check_f and f is not None:
        fst = seen["f"]
        if not f:
            raise DSLError("designated f is zero", fst.line, fst.col, source)
        if not R.is_nonzerodivisor(f):
            raise DSLError("designated f is a zero-divisor modulo Q", fst.line, fst.col, source)
    return entry


def load_entry(path: str) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_presentation(text, source=path)


def load_catalog(directory: str) -> List[CatalogEntry]:
    """All ``*.ring`` files of a directory, sorted by file name."""
    files = sorted(f for f in os.listdir(directory) if f.endswith(".ring"))
    return [load_entry(os.path.join(directory, f)) for f in files]


def builtin_catalog_dir() -> str:
    return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "catalog")

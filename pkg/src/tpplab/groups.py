"""Finite groups used by the triple-product constructions.

Four families are supported: cyclic groups, symmetric groups (with a
triangle-labelled variant), direct products and wreath products
``H wr Sym_n``.  Elements are plain hashable Python values:

* cyclic: ``int`` residue in ``[0, n)``
* symmetric: ``tuple`` image array, ``p[i]`` is the image of point ``i``
* direct product: ``tuple`` of component elements
* wreath: ``(base_tuple, perm_tuple)``

Permutations act on the left, so ``mul(a, b)`` is ``a`` after ``b``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable, Iterator, Sequence, Union

Element = Hashable

DEFAULT_CAP = 10**6


class GroupError(ValueError):
    """Invalid group specification or element."""


class UnsupportedGroup(ValueError):
    """Operation is not defined for this kind of group."""


class GroupTooLarge(RuntimeError):
    """Enumeration would exceed the configured cap."""


# --------------------------------------------------------------------------
# Specifications


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self) -> str:
        return f"cyc({self.n})"


@dataclass(frozen=True)
class Symmetric:
    n: int

    def __str__(self) -> str:
        return f"sym({self.n})"


@dataclass(frozen=True)
class TriangleSymmetric:
    """Sym of the triangle set Delta_n, i.e. Sym(n(n+1)/2) with triangle labels."""

    n: int

    @property
    def degree(self) -> int:
        return self.n * (self.n + 1) // 2

    def __str__(self) -> str:
        return f"tri({self.n})"


@dataclass(frozen=True)
class DirectProduct:
    parts: tuple

    def __str__(self) -> str:
        if len(self.parts) > 1 and len(set(self.parts)) == 1:
            return f"{_wrap(self.parts[0])}^{len(self.parts)}"
        return " x ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Wreath:
    base: Any
    n: int

    def __str__(self) -> str:
        return f"{_wrap(self.base)} wr sym({self.n})"


GroupSpec = Union[Cyclic, Symmetric, TriangleSymmetric, DirectProduct, Wreath]


def _wrap(spec: GroupSpec) -> str:
    if isinstance(spec, (DirectProduct, Wreath)):
        return f"({spec})"
    return str(spec)


def power(spec: GroupSpec, k: int) -> DirectProduct:
    """K-fold direct power of ``spec``."""
    if k < 1:
        raise GroupError("direct power exponent must be >= 1")
    return DirectProduct((spec,) * k)


def spec_order(spec: GroupSpec) -> int:
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, TriangleSymmetric):
        return math.factorial(spec.degree)
    if isinstance(spec, DirectProduct):
        return math.prod(spec_order(p) for p in spec.parts)
    if isinstance(spec, Wreath):
        return spec_order(spec.base) ** spec.n * math.factorial(spec.n)
    raise GroupError(f"unknown group spec {spec!r}")


def validate_spec(spec: GroupSpec) -> None:
    if isinstance(spec, (Cyclic, Symmetric, TriangleSymmetric)):
        if not isinstance(spec.n, int) or spec.n < 1:
            raise GroupError(f"{type(spec).__name__} size must be a positive integer, got {spec.n!r}")
    elif isinstance(spec, DirectProduct):
        if not spec.parts:
            raise GroupError("direct product needs at least one factor")
        for p in spec.parts:
            validate_spec(p)
    elif isinstance(spec, Wreath):
        if not isinstance(spec.n, int) or spec.n < 1:
            raise GroupError(f"wreath degree must be a positive integer, got {spec.n!r}")
        validate_spec(spec.base)
    else:
        raise GroupError(f"unknown group spec {spec!r}")


# --------------------------------------------------------------------------
# Groups


class Group:
    """Arithmetic handle for a finite group.  Immutable."""

    spec: GroupSpec
    is_abelian: bool

    @property
    def order(self) -> int:
        return spec_order(self.spec)

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def contains(self, a: Element) -> bool:
        raise NotImplementedError

    def _iter(self) -> Iterator[Element]:
        raise NotImplementedError

    def format_element(self, a: Element) -> str:
        raise NotImplementedError

    def coerce(self, value: Any) -> Element:
        """Convert a parsed canonical-text value into an element of this group."""
        raise NotImplementedError

    # shared helpers

    def check(self, a: Element) -> Element:
        if not self.contains(a):
            raise GroupError(f"{a!r} is not an element of {self.spec}")
        return a

    def enumerate(self, cap: int = DEFAULT_CAP) -> list:
        if self.order > cap:
            raise GroupTooLarge(f"{self.spec} has order {self.order} > cap {cap}")
        return list(self._iter())

    def prod(self, *elements: Element) -> Element:
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    def parse_element(self, text: str) -> Element:
        return self.coerce(parse_element_text(text))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"<Group {self.spec}>"

    def __str__(self) -> str:
        return str(self.spec)

    def __reduce__(self):
        return (build_group, (self.spec,))


class CyclicGroup(Group):
    is_abelian = True

    def __init__(self, spec: Cyclic):
        self.spec = spec
        self.n = spec.n

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return -a % self.n

    def contains(self, a) -> bool:
        return type(a) is int and 0 <= a < self.n

    def _iter(self):
        return iter(range(self.n))

    def format_element(self, a) -> str:
        return f"c:{a}"

    def coerce(self, value):
        if isinstance(value, tuple) and len(value) == 2 and value[0] == "c":
            return self.check(value[1])
        raise GroupError(f"expected cyclic element c:<int>, got {value!r}")


class SymmetricGroup(Group):
    def __init__(self, spec: Union[Symmetric, TriangleSymmetric]):
        self.spec = spec
        self.degree = spec.degree if isinstance(spec, TriangleSymmetric) else spec.n
        self.is_abelian = self.degree <= 2
        self._identity = tuple(range(self.degree))

    @property
    def identity(self) -> tuple:
        return self._identity

    def mul(self, a, b):
        return tuple([a[i] for i in b])

    def inv(self, a):
        out = [0] * len(a)
        for i, ai in enumerate(a):
            out[ai] = i
        return tuple(out)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(type(x) is int for x in a)
            and sorted(a) == list(range(self.degree))
        )

    def _iter(self):
        return itertools.permutations(range(self.degree))

    def format_element(self, a) -> str:
        return "p:[" + ",".join(map(str, a)) + "]"

    def coerce(self, value):
        if isinstance(value, tuple) and len(value) == 2 and value[0] == "p":
            return self.check(tuple(value[1]))
        raise GroupError(f"expected permutation p:[...], got {value!r}")

    def from_cycles(self, *cycles: Sequence[int]) -> tuple:
        """Build a permutation from 1-based cycles, e.g. ``from_cycles((1, 2, 3))``."""
        img = list(range(self.degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return self.check(tuple(img))

    @property
    def points(self) -> list:
        """Point labels: triangle triples for ``tri(n)``, else ``0..degree-1``."""
        if isinstance(self.spec, TriangleSymmetric):
            return triangle_set(self.spec.n)
        return list(range(self.degree))


class DirectProductGroup(Group):
    def __init__(self, spec: DirectProduct):
        self.spec = spec
        self.parts = tuple(build_group(p) for p in spec.parts)
        self.is_abelian = all(p.is_abelian for p in self.parts)
        self._identity = tuple(p.identity for p in self.parts)
        # residue arithmetic fast path for products of cyclic groups
        self._moduli = (
            tuple(p.n for p in self.parts)
            if all(isinstance(p, CyclicGroup) for p in self.parts)
            else None
        )

    @property
    def identity(self) -> tuple:
        return self._identity

    def mul(self, a, b):
        if self._moduli is not None:
            return tuple([(x + y) % n for x, y, n in zip(a, b, self._moduli)])
        return tuple([g.mul(x, y) for g, x, y in zip(self.parts, a, b)])

    def inv(self, a):
        if self._moduli is not None:
            return tuple([-x % n for x, n in zip(a, self._moduli)])
        return tuple([g.inv(x) for g, x in zip(self.parts, a)])

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.parts)
            and all(g.contains(x) for g, x in zip(self.parts, a))
        )

    def _iter(self):
        return itertools.product(*(p._iter() for p in self.parts))

    def format_element(self, a) -> str:
        return "(" + ",".join(g.format_element(x) for g, x in zip(self.parts, a)) + ")"

    def coerce(self, value):
        if isinstance(value, list) and not isinstance(value, str):
            value = tuple(value)
        if not (isinstance(value, tuple) and len(value) == len(self.parts)) or (value and isinstance(value[0], str)):
            raise GroupError(f"expected a {len(self.parts)}-tuple for {self.spec}, got {value!r}")
        return tuple(g.coerce(v) for g, v in zip(self.parts, value))

    def embed(self, index: int, x: Element) -> tuple:
        """Element equal to ``x`` in factor ``index`` and identity elsewhere."""
        out = list(self._identity)
        out[index] = x
        return tuple(out)


class WreathGroup(Group):
    """``H^n`` semidirect ``Sym_n``; ``Sym_n`` permutes coordinates."""

    def __init__(self, spec: Wreath):
        self.spec = spec
        self.base = build_group(spec.base)
        self.n = spec.n
        self.top = build_group(Symmetric(spec.n))
        self.is_abelian = self.n == 1 and self.base.is_abelian
        self._identity = ((self.base.identity,) * self.n, self.top.identity)

    @property
    def identity(self):
        return self._identity

    def act(self, mu: tuple, h: tuple) -> tuple:
        """Coordinate action ``(mu . h)_i = h_{mu^-1(i)}``."""
        out = [None] * self.n
        for j, hj in enumerate(h):
            out[mu[j]] = hj
        return tuple(out)

    def mul(self, a, b):
        h, mu = a
        k, nu = b
        base = self.base
        moved = self.act(mu, k)
        return (tuple([base.mul(x, y) for x, y in zip(h, moved)]), self.top.mul(mu, nu))

    def inv(self, a):
        # two-sided inverse ((h^-1)_{mu(i)})_i, mu^-1
        h, mu = a
        base = self.base
        return (tuple([base.inv(h[mu[i]]) for i in range(self.n)]), self.top.inv(mu))

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and isinstance(a[0], tuple)
            and len(a[0]) == self.n
            and all(self.base.contains(x) for x in a[0])
            and self.top.contains(a[1])
        )

    def _iter(self):
        for h in itertools.product(*(self.base._iter() for _ in range(self.n))):
            for mu in self.top._iter():
                yield (tuple(h), mu)

    def format_element(self, a) -> str:
        h, mu = a
        return "w:([" + ",".join(self.base.format_element(x) for x in h) + "]," + self.top.format_element(mu) + ")"

    def coerce(self, value):
        if not (isinstance(value, tuple) and len(value) == 3 and value[0] == "w"):
            raise GroupError(f"expected wreath element w:([...],p:[...]), got {value!r}")
        _, hs, mu = value
        if not isinstance(hs, list) or len(hs) != self.n:
            raise GroupError(f"wreath base must list {self.n} elements")
        return self.check((tuple(self.base.coerce(x) for x in hs), self.top.coerce(mu)))


@lru_cache(maxsize=None)
def build_group(spec: GroupSpec) -> Group:
    """Return the arithmetic handle for ``spec`` (cached per spec)."""
    validate_spec(spec)
    if isinstance(spec, Cyclic):
        return CyclicGroup(spec)
    if isinstance(spec, (Symmetric, TriangleSymmetric)):
        return SymmetricGroup(spec)
    if isinstance(spec, DirectProduct):
        return DirectProductGroup(spec)
    return WreathGroup(spec)


def triangle_set(n: int) -> list:
    """Nonnegative triples summing to ``n - 1``, in descending lexicographic order."""
    if n < 1:
        raise GroupError("triangle set needs n >= 1")
    return [
        (x1, x2, n - 1 - x1 - x2)
        for x1 in range(n - 1, -1, -1)
        for x2 in range(n - 1 - x1, -1, -1)
    ]


# --------------------------------------------------------------------------
# Canonical text for elements


def parse_element_text(text: str) -> Any:
    """Parse canonical element text into nested values.

    ``c:3`` -> ``("c", 3)``; ``p:[2,0,1]`` -> ``("p", [2, 0, 1])``;
    ``(x,y)`` -> tuple; ``w:([...],p:[...])`` -> ``("w", [...], ("p", [...]))``.
    """
    pos = 0
    s = text.replace(" ", "").replace("\t", "").replace("\n", "")

    def fail(msg: str):
        raise GroupError(f"bad element text {text!r} at position {pos}: {msg}")

    def expect(ch: str):
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            fail(f"expected {ch!r}")
        pos += 1

    def integer() -> int:
        nonlocal pos
        start = pos
        if pos < len(s) and s[pos] == "-":
            pos += 1
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos or s[start:pos] == "-":
            fail("expected integer")
        return int(s[start:pos])

    def seq(close: str, item) -> list:
        nonlocal pos
        items = []
        if pos < len(s) and s[pos] == close:
            pos += 1
            return items
        while True:
            items.append(item())
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            expect(close)
            return items

    def value():
        nonlocal pos
        if s.startswith("c:", pos):
            pos += 2
            return ("c", integer())
        if s.startswith("p:", pos):
            pos += 2
            expect("[")
            return ("p", seq("]", integer))
        if s.startswith("w:", pos):
            pos += 2
            expect("(")
            expect("[")
            base = seq("]", value)
            expect(",")
            top = value()
            expect(")")
            return ("w", base, top)
        if pos < len(s) and s[pos] == "(":
            pos += 1
            return tuple(seq(")", value))
        fail("unexpected character" if pos < len(s) else "unexpected end")

    out = value()
    if pos != len(s):
        fail("trailing characters")
    return out


# --------------------------------------------------------------------------
# Group spec grammar
#
#   product := wreath ("x" wreath)*
#   wreath  := power ("wr" "sym" "(" INT ")")*
#   power   := atom ("^" INT)*
#   atom    := ("cyc" | "sym" | "tri") "(" INT ")" | "(" product ")"

_KEYWORDS = ("cyc", "sym", "tri", "wr", "x", "\u00d7")


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch in "()^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        for kw in _KEYWORDS:
            if text.startswith(kw, i):
                tokens.append(("x" if kw == "\u00d7" else kw, kw, i))
                i += len(kw)
                break
        else:
            raise GroupError(f"unexpected character {ch!r} at position {i} in {text!r}")
    tokens.append(("end", None, len(text)))
    return tokens


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a group spec such as ``"cyc(3)^3 wr sym(2)"``."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0]

    def take(kind: str):
        nonlocal pos
        tok = tokens[pos]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise GroupError(f"expected {kind!r} at position {tok[2]} in {text!r}, found {found}")
        pos += 1
        return tok[1]

    def sized(kind: str) -> int:
        take(kind)
        take("(")
        n = take("int")
        take(")")
        return n

    def atom():
        kind = peek()
        if kind == "cyc":
            return Cyclic(sized("cyc"))
        if kind == "sym":
            return Symmetric(sized("sym"))
        if kind == "tri":
            return TriangleSymmetric(sized("tri"))
        if kind == "(":
            take("(")
            inner = product()
            take(")")
            return inner
        tok = tokens[pos]
        raise GroupError(f"expected a group at position {tok[2]} in {text!r}")

    def pow_():
        g = atom()
        while peek() == "^":
            take("^")
            g = power(g, take("int"))
        return g

    def wreath():
        g = pow_()
        while peek() == "wr":
            take("wr")
            g = Wreath(g, sized("sym"))
        return g

    def product():
        parts = [wreath()]
        while peek() == "x":
            take("x")
            parts.append(wreath())
        return parts[0] if len(parts) == 1 else DirectProduct(tuple(parts))

    spec = product()
    take("end")
    validate_spec(spec)
    return spec

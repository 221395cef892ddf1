"""Permutations of {0..n-1} stored as image tuples.

Composition is left-to-right: (p * q)(x) = q(p(x)), matching the usual
convention for permutation group algorithms. Raw image tuples are used in
hot loops; the helpers below work on either form.
"""

from __future__ import annotations

import re
from math import lcm


def mul_images(p: tuple, q: tuple) -> tuple:
    """Compose image tuples, p first then q."""
    return tuple(q[i] for i in p)


def inv_images(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conj_images(p: tuple, q: tuple) -> tuple:
    """q^-1 * p * q on image tuples."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[q[i]] = q[j]
    return tuple(out)


def identity_images(degree: int) -> tuple:
    return tuple(range(degree))


def power_images(p: tuple, n: int) -> tuple:
    if n < 0:
        return power_images(inv_images(p), -n)
    out = identity_images(len(p))
    sq = p
    while n:
        if n & 1:
            out = mul_images(out, sq)
        n >>= 1
        if n:
            sq = mul_images(sq, sq)
    return out


def order_of_images(p: tuple) -> int:
    n = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        n = lcm(n, length)
    return n


class Permutation:
    """Immutable permutation; equality and hashing by image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("image sequence is not a bijection of 0..n-1")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(degree: int, cycles) -> "Permutation":
        """Build from cycles of 0-based points, multiplied left to right."""
        images = list(range(degree))
        for cycle in cycles:
            if len(cycle) < 2:
                continue
            cy = list(range(degree))
            for a, b in zip(cycle, cycle[1:]):
                cy[a] = b
            cy[cycle[-1]] = cycle[0]
            images = [cy[i] for i in images]
        return Permutation(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(mul_images(self.images, other.images))

    def __invert__(self) -> "Permutation":
        return Permutation(inv_images(self.images))

    def __pow__(self, n: int) -> "Permutation":
        return Permutation(power_images(self.images, n))

    def conjugate_by(self, other: "Permutation") -> "Permutation":
        return Permutation(conj_images(self.images, other.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return order_of_images(self.images)

    def cycles(self, include_fixed: bool = False) -> list:
        """Disjoint cycles, each rotated to start at its least point."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple:
        """Sorted cycle lengths including fixed points."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def __repr__(self) -> str:
        return f"Permutation.parse({cycle_string(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return cycle_string(self)


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


def cycle_string(p: Permutation) -> str:
    """Render in 1-based disjoint-cycle notation, '()' for the identity."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint-cycle notation, e.g. '(1,2)(3,4,5)'."""
    stripped = text.strip()
    if stripped in ("()", ""):
        return Permutation.identity(degree)
    consumed = _CYCLE_RE.sub("", stripped).strip()
    if consumed:
        raise ValueError(f"cannot parse permutation {text!r}: leftover {consumed!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        pts = [int(tok) - 1 for tok in m.group(1).split(",")]
        if any(x < 0 or x >= degree for x in pts):
            raise ValueError(f"point out of range 1..{degree} in {text!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle in {text!r}")
        cycles.append(pts)
    return Permutation.from_cycles(degree, cycles)

"""Conjugacy classes by full enumeration, for groups below a size threshold.

Class representatives are the lexicographically least members of their
classes and classes are sorted by (element order, class size, representative
images), so the result is identical no matter how the group was generated
or in what order elements are visited.
"""

from __future__ import annotations

from math import lcm

from .group import PermGroup
from .perm import Permutation, inv_images, order_of_images, power_images

DEFAULT_ENUMERATION_THRESHOLD = 2_000_000
_RETAIN_ELEMENT_MAP_MAX = 10_000


class EnumerationThresholdError(RuntimeError):
    """Raised when a group is too large for full class enumeration."""


class ConjugacyClassSet:
    """Classes of an enumerable group.

    Attributes: reps (lex-least Permutation per class), sizes, orders,
    inverse_map (class of rep^-1), power_maps (prime -> tuple of class
    indices of p-th powers, for every prime dividing the exponent).
    Class 0 is the identity class.
    """

    def __init__(self, group: PermGroup, threshold: int = DEFAULT_ENUMERATION_THRESHOLD):
        if group.order() > threshold:
            raise EnumerationThresholdError(
                f"group order {group.order()} exceeds enumeration threshold {threshold};"
                " use table-based class matching instead"
            )
        self.group = group
        gens = [g.images for g in group.generators]
        inv_gens = [inv_images(g) for g in gens]
        n = group.degree
        rng_n = range(n)

        element_class: dict = {}
        raw: list[tuple] = []  # (rep images, size)
        for x in group.element_images_iter():
            if x in element_class:
                continue
            orbit = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for g, gi in zip(gens, inv_gens):
                    z = tuple(g[y[gi[i]]] for i in rng_n)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            idx = len(raw)
            raw.append((min(orbit), len(orbit)))
            for y in orbit:
                element_class[y] = idx

        order_key = [order_of_images(rep) for rep, _ in raw]
        perm = sorted(
            range(len(raw)), key=lambda i: (order_key[i], raw[i][1], raw[i][0])
        )
        newindex = [0] * len(raw)
        for new, old in enumerate(perm):
            newindex[old] = new
        self.reps = [Permutation(raw[old][0]) for old in perm]
        self.sizes = [raw[old][1] for old in perm]
        self.orders = [order_key[old] for old in perm]
        self.exponent = lcm(*self.orders)

        remap = {y: newindex[i] for y, i in element_class.items()}
        self.inverse_map = tuple(remap[inv_images(r.images)] for r in self.reps)
        self.power_maps: dict[int, tuple] = {}
        # prime 2 is always stored: indicator sums square class reps even in
        # odd-order groups
        for p in sorted({2, *_primes_dividing(self.exponent)}):
            self.power_maps[p] = tuple(
                remap[power_images(r.images, p)] for r in self.reps
            )
        self._element_class = remap if group.order() <= _RETAIN_ELEMENT_MAP_MAX else None
        self._rep_index = {r.images: i for i, r in enumerate(self.reps)}

    def __len__(self) -> int:
        return len(self.reps)

    def class_of(self, p: Permutation) -> int:
        """Index of the class containing p."""
        images = p.images if isinstance(p, Permutation) else tuple(p)
        if self._element_class is not None:
            return self._element_class[images]
        hit = self._rep_index.get(images)
        if hit is not None:
            return hit
        # the lex-least member of the conjugation orbit is the stored rep
        gens = [g.images for g in self.group.generators]
        inv_gens = [inv_images(g) for g in gens]
        rng_n = range(self.group.degree)
        orbit = {images}
        queue = [images]
        best = images
        while queue:
            y = queue.pop()
            for g, gi in zip(gens, inv_gens):
                z = tuple(g[y[gi[i]]] for i in rng_n)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
                    if z < best:
                        best = z
        return self._rep_index[best]

    def power_class(self, i: int, k: int) -> int:
        """Class of rep_i^k for any integer k."""
        m = self.orders[i]
        k %= m
        if k == 0:
            return 0
        if k == 1:
            return i
        if k == m - 1:
            return self.inverse_map[i]
        cur = i
        for p in _factorize(k):
            pm = self.power_maps.get(p)
            if pm is not None:
                cur = pm[cur]
            else:
                return self.class_of(Permutation(power_images(self.reps[i].images, k)))
        return cur

    def element_class_map(self) -> dict:
        """images tuple -> class index, rebuilt on demand for larger groups."""
        if self._element_class is not None:
            return self._element_class
        gens = [g.images for g in self.group.generators]
        inv_gens = [inv_images(g) for g in gens]
        rng_n = range(self.group.degree)
        out: dict = {}
        for i, rep in enumerate(self.reps):
            orbit = {rep.images}
            queue = [rep.images]
            while queue:
                y = queue.pop()
                for g, gi in zip(gens, inv_gens):
                    z = tuple(g[y[gi[i2]]] for i2 in rng_n)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            for y in orbit:
                out[y] = i
        return out

    def real_class_indices(self) -> list:
        """Classes closed under inversion."""
        return [i for i in range(len(self.reps)) if self.inverse_map[i] == i]


def conjugacy_classes(
    group: PermGroup, threshold: int = DEFAULT_ENUMERATION_THRESHOLD
) -> ConjugacyClassSet:
    return ConjugacyClassSet(group, threshold=threshold)


def power_map(C: ConjugacyClassSet, k: int) -> tuple:
    """The class-level k-th power map; k = -1 gives the inverse map."""
    if k == 1:
        return tuple(range(len(C)))
    if k == -1:
        return C.inverse_map
    return tuple(C.power_class(i, k) for i in range(len(C)))


def _primes_dividing(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _factorize(k: int) -> list:
    """Prime factors with multiplicity."""
    out = []
    d = 2
    while d * d <= k:
        while k % d == 0:
            out.append(d)
            k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out

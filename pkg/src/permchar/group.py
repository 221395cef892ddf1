"""Permutation groups with a base and strong generating set.

The chain is built by a deterministic Schreier-Sims; all results are
reproducible for a fixed generator order. Groups are immutable once
constructed and safe for concurrent reads.
"""

from __future__ import annotations

import random

from .perm import (
    Permutation,
    conj_images,
    identity_images,
    inv_images,
    mul_images,
    order_of_images,
)

# Above this degree, transversals hold Schreier-vector entries instead of
# full image tuples (coset actions can have thousands of points).
_FULL_TRANSVERSAL_MAX_DEGREE = 512


class _Level:
    """One stabilizer-chain level.

    `gens` holds the strong generators first attached here; the basic orbit
    of `point` is always computed over the generators of the whole
    stabilizer, i.e. the union of `gens` over this and all deeper levels
    (`orbit_gens`, snapshot at recompute time).
    """

    __slots__ = ("point", "gens", "orbit", "orbit_gens", "orbit_inv_gens", "full")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[tuple] = []
        self.orbit_gens: list[tuple] = []
        self.orbit_inv_gens: list[tuple] = []
        self.full = degree <= _FULL_TRANSVERSAL_MAX_DEGREE
        # full mode: orbit point -> transversal image tuple u with u[point] = pt
        # vector mode: orbit point -> None (root) or (parent point, gen index)
        self.orbit: dict = {point: identity_images(degree) if self.full else None}

    def recompute_orbit(self, stab_gens: list, degree: int) -> None:
        self.orbit_gens = list(stab_gens)
        self.orbit_inv_gens = [inv_images(g) for g in stab_gens]
        if self.full:
            self.orbit = {self.point: identity_images(degree)}
            queue = [self.point]
            while queue:
                a = queue.pop(0)
                u = self.orbit[a]
                for g in self.orbit_gens:
                    b = g[a]
                    if b not in self.orbit:
                        self.orbit[b] = mul_images(u, g)
                        queue.append(b)
        else:
            self.orbit = {self.point: None}
            queue = [self.point]
            while queue:
                a = queue.pop(0)
                for gi, g in enumerate(self.orbit_gens):
                    b = g[a]
                    if b not in self.orbit:
                        self.orbit[b] = (a, gi)
                        queue.append(b)

    def transversal(self, pt: int, degree: int) -> tuple:
        """Element u with u[point] = pt."""
        if self.full:
            return self.orbit[pt]
        path = []
        while True:
            entry = self.orbit[pt]
            if entry is None:
                break
            parent, gi = entry
            path.append(gi)
            pt = parent
        u = identity_images(degree)
        for gi in reversed(path):
            u = mul_images(u, self.orbit_gens[gi])
        return u

    def transversal_inv(self, pt: int, degree: int) -> tuple:
        """Inverse of the transversal element, without building it first."""
        if self.full:
            return inv_images(self.orbit[pt])
        u = identity_images(degree)
        while True:
            entry = self.orbit[pt]
            if entry is None:
                return u
            parent, gi = entry
            u = mul_images(u, self.orbit_inv_gens[gi])
            pt = parent


class PermGroup:
    """Group generated by permutations of {0..degree-1}, with BSGS."""

    def __init__(self, generators, degree: int, base_hint=None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = [g for g in gens if not g.is_identity()]
        self._levels: list[_Level] = []
        self._strict_hint_len = 0
        if base_hint:
            for pt in base_hint:
                self._levels.append(_Level(pt, degree))
            self._strict_hint_len = len(self._levels)
        self._schreier_sims([g.images for g in self.generators])
        self._order = 1
        for lv in self._levels:
            self._order *= len(lv.orbit)

    # -- construction ------------------------------------------------------

    def _sift(self, g: tuple, start: int = 0):
        """Reduce g through the chain; returns (residue, stop level)."""
        levels = self._levels
        for i in range(start, len(levels)):
            lv = levels[i]
            x = g[lv.point]
            if x == lv.point:
                continue
            if x not in lv.orbit:
                return g, i
            g = mul_images(g, lv.transversal_inv(x, self.degree))
        return g, len(levels)

    def _is_identity(self, g: tuple) -> bool:
        return all(i == j for i, j in enumerate(g))

    def _new_level_point(self, g: tuple) -> int:
        return next(i for i in range(self.degree) if g[i] != i)

    def _stab_gens(self, i: int) -> list:
        out = []
        for lv in self._levels[i:]:
            out.extend(lv.gens)
        return out

    def _add_generator_at(self, i: int, g: tuple) -> None:
        if i == len(self._levels):
            self._levels.append(_Level(self._new_level_point(g), self.degree))
        self._levels[i].gens.append(g)
        # the new generator enlarges every stabilizer down to level i
        for j in range(i, -1, -1):
            self._levels[j].recompute_orbit(self._stab_gens(j), self.degree)

    def _schreier_sims(self, gens: list[tuple]) -> None:
        for g in gens:
            residue, i = self._sift(g)
            if not self._is_identity(residue):
                self._add_generator_at(i, residue)
        # verify Schreier generators bottom-up; jumping deeper on new strong
        # generators keeps the pass deterministic and terminating
        i = len(self._levels) - 1
        while i >= 0:
            lv = self._levels[i]
            clean = True
            for pt in sorted(lv.orbit):
                u = lv.transversal(pt, self.degree)
                for g in lv.orbit_gens:
                    target = g[pt]
                    s = mul_images(
                        mul_images(u, g), lv.transversal_inv(target, self.degree)
                    )
                    if self._is_identity(s):
                        continue
                    residue, j = self._sift(s, i + 1)
                    if not self._is_identity(residue):
                        self._add_generator_at(j, residue)
                        i = j
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                i -= 1

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        return self._order

    @property
    def base(self) -> list:
        return [lv.point for lv in self._levels if len(lv.orbit) > 1]

    def strong_generators(self) -> list:
        out = []
        for lv in self._levels:
            out.extend(Permutation(g) for g in lv.gens)
        return out

    def basic_orbits(self) -> list:
        return [sorted(lv.orbit) for lv in self._levels if len(lv.orbit) > 1]

    def contains_images(self, g: tuple) -> bool:
        if len(g) != self.degree:
            return False
        residue, _ = self._sift(g)
        return self._is_identity(residue)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains_images(p.images)

    def is_trivial(self) -> bool:
        return self._order == 1

    def random_element(self, rng: random.Random) -> Permutation:
        g = identity_images(self.degree)
        for lv in self._levels:
            if len(lv.orbit) == 1:
                continue
            pts = sorted(lv.orbit)
            pt = pts[rng.randrange(len(pts))]
            g = mul_images(lv.transversal(pt, self.degree), g)
        return Permutation(g)

    def element_images_iter(self):
        """All elements as image tuples, in a fixed deterministic order."""
        nontrivial = [lv for lv in self._levels if len(lv.orbit) > 1]

        def rec(i: int, prefix: tuple):
            if i < 0:
                yield prefix
                return
            lv = nontrivial[i]
            for pt in sorted(lv.orbit):
                u = lv.transversal(pt, self.degree)
                yield from rec(i - 1, mul_images(prefix, u))

        # compose deepest stabilizer first so each element is formed once
        yield from rec(len(nontrivial) - 1, identity_images(self.degree))

    def elements(self):
        for g in self.element_images_iter():
            yield Permutation(g)

    def pointwise_stabilizer(self, points) -> "PermGroup":
        """Subgroup fixing every listed point."""
        points = list(points)
        chain = PermGroup(self.generators, self.degree, base_hint=points)
        gens = []
        for lv in chain._levels[len(points):]:
            gens.extend(Permutation(g) for g in lv.gens)
        return PermGroup(gens, self.degree)

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self._order} ngens={len(self.generators)}>"


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree)


def is_subgroup(H: PermGroup, G: PermGroup) -> bool:
    """Whether every generator of H lies in G (degrees must agree)."""
    if H.degree != G.degree:
        return False
    return all(G.contains_images(g.images) for g in H.generators)


def is_normal_in(H: PermGroup, G: PermGroup) -> bool:
    for g in G.generators:
        for h in H.generators:
            if not H.contains_images(conj_images(h.images, g.images)):
                return False
    return True


def normal_closure(G: PermGroup, seeds) -> PermGroup:
    """Smallest normal subgroup of G containing the seed permutations."""
    gens = [s if isinstance(s, Permutation) else Permutation(s) for s in seeds]
    closure = PermGroup(gens, G.degree)
    changed = True
    while changed:
        changed = False
        new = []
        for g in G.generators:
            for h in closure.generators:
                c = conj_images(h.images, g.images)
                if not closure.contains_images(c):
                    new.append(Permutation(c))
        if new:
            closure = PermGroup(closure.generators + new, G.degree)
            changed = True
    return closure


# -- generic orbit / stabilizer machinery -----------------------------------


def orbit_stabilizer(G: PermGroup, seed, act, want_stabilizer=True, orbit_limit=None):
    """Orbit of `seed` under `act(obj, gen_images)` plus its stabilizer.

    Objects must be hashable. Returns (orbit list, stabilizer PermGroup or
    None). Transversal words are kept as parent pointers; Schreier
    generators are sifted incrementally so the stabilizer generating set
    stays small. Deterministic for a fixed generator order.
    """
    gens = [g.images for g in G.generators]
    orbit_index = {seed: 0}
    orbit = [seed]
    parents: list = [None]
    queue = [0]
    while queue:
        i = queue.pop(0)
        for gi, g in enumerate(gens):
            img = act(orbit[i], g)
            if img not in orbit_index:
                if orbit_limit is not None and len(orbit) >= orbit_limit:
                    raise RuntimeError("orbit exceeds limit")
                orbit_index[img] = len(orbit)
                orbit.append(img)
                parents.append((i, gi))
                queue.append(len(orbit) - 1)
    if not want_stabilizer:
        return orbit, None

    def word_for(i: int) -> tuple:
        u = identity_images(G.degree)
        path = []
        while parents[i] is not None:
            j, gi = parents[i]
            path.append(gi)
            i = j
        for gi in reversed(path):
            u = mul_images(u, gens[gi])
        return u

    words = [word_for(i) for i in range(len(orbit))]
    stab_gens: list[Permutation] = []
    stab = trivial_group(G.degree)
    for i in range(len(orbit)):
        u = words[i]
        for gi, g in enumerate(gens):
            img = act(orbit[i], g)
            j = orbit_index[img]
            s = mul_images(mul_images(u, g), inv_images(words[j]))
            if not stab.contains_images(s):
                stab_gens.append(Permutation(s))
                stab = PermGroup(stab_gens, G.degree)
    return orbit, stab


def centralizer(G: PermGroup, x: Permutation) -> PermGroup:
    """C_G(x) via the conjugation orbit of x (the class of x)."""

    def act(obj, g):
        return conj_images(obj, g)

    _, stab = orbit_stabilizer(G, x.images, act)
    return stab


def _subgroup_key(elements_images) -> frozenset:
    return frozenset(elements_images)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """N_G(H) via the conjugation orbit of H's element set."""
    elems = frozenset(H.element_images_iter())

    def act(obj, g):
        return frozenset(conj_images(e, g) for e in obj)

    _, stab = orbit_stabilizer(G, elems, act)
    return stab


def setwise_stabilizer(G: PermGroup, points) -> PermGroup:
    """Stabilizer of a point set, via the orbit on point sets."""
    seed = frozenset(points)

    def act(obj, g):
        return frozenset(g[p] for p in obj)

    _, stab = orbit_stabilizer(G, seed, act)
    return stab


# -- coset actions -----------------------------------------------------------


class CosetAction:
    """Right-multiplication action of G on the right cosets of H.

    Coset 0 is H itself. `reps` holds one representative image tuple per
    coset; `gen_images` the induced permutation (as an image tuple over
    coset indices) of each G-generator.
    """

    def __init__(self, G: PermGroup, H: PermGroup):
        if H.degree != G.degree:
            raise ValueError("degree mismatch between group and subgroup")
        if not is_subgroup(H, G):
            raise ValueError("H is not a subgroup of G")
        self.G = G
        self.H = H
        self._h_orbits = _point_orbits(H)
        self.reps: list[tuple] = [identity_images(G.degree)]
        self._buckets: dict = {self._invariant(self.reps[0]): [0]}
        gens = [g.images for g in G.generators]
        images: list[list[int]] = [[] for _ in gens]
        i = 0
        while i < len(self.reps):
            x = self.reps[i]
            for gi, g in enumerate(gens):
                y = mul_images(x, g)
                j = self._find_or_add(y)
                images[gi].append(j)
            i += 1
        self.degree = len(self.reps)
        self.gen_images = [tuple(img) for img in images]
        self._image_group: PermGroup | None = None

    def _invariant(self, x: tuple) -> tuple:
        # Hx is determined up to membership tests by the multiset of
        # H-orbit images; min per orbit is a cheap stable proxy
        return tuple(min(x[p] for p in orb) for orb in self._h_orbits)

    def _find_or_add(self, y: tuple) -> int:
        key = self._invariant(y)
        bucket = self._buckets.setdefault(key, [])
        for j in bucket:
            # Hy == Hr  iff  y * r^-1 in H
            if self.H.contains_images(mul_images(y, inv_images(self.reps[j]))):
                return j
        self.reps.append(y)
        bucket.append(len(self.reps) - 1)
        return len(self.reps) - 1

    def coset_of(self, x: tuple) -> int:
        key = self._invariant(x)
        for j in self._buckets.get(key, ()):
            if self.H.contains_images(mul_images(x, inv_images(self.reps[j]))):
                return j
        raise ValueError("element does not lie in the acted-on group")

    def image_of(self, p: Permutation) -> Permutation:
        """Induced permutation of the coset space."""
        g = p.images
        return Permutation(
            tuple(self.coset_of(mul_images(self.reps[i], g)) for i in range(self.degree))
        )

    def fixed_cosets(self, p: Permutation) -> int:
        """Number of cosets fixed by p: #{i : reps[i] * p * reps[i]^-1 in H}."""
        g = p.images
        count = 0
        for x in self.reps:
            if self.H.contains_images(mul_images(mul_images(x, g), inv_images(x))):
                count += 1
        return count

    def image_group(self) -> PermGroup:
        if self._image_group is None:
            self._image_group = PermGroup(
                [Permutation(img) for img in self.gen_images], self.degree
            )
        return self._image_group

    def kernel(self) -> PermGroup:
        """Kernel of the action, as a subgroup of G (equals core_G(H))."""
        n, m = self.G.degree, self.degree
        combined = [
            Permutation(g.images + tuple(n + j for j in img))
            for g, img in zip(self.G.generators, self.gen_images)
        ]
        chain = PermGroup(combined, n + m, base_hint=list(range(n, n + m)))
        gens = []
        for lv in chain._levels[m:]:
            gens.extend(Permutation(g[:n]) for g in lv.gens)
        return PermGroup(gens, n)


def _point_orbits(H: PermGroup) -> list:
    seen = [False] * H.degree
    orbits = []
    for start in range(H.degree):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        queue = [start]
        while queue:
            a = queue.pop(0)
            for g in H.generators:
                b = g[a]
                if not seen[b]:
                    seen[b] = True
                    orb.append(b)
                    queue.append(b)
        orbits.append(tuple(orb))
    return orbits


def coset_action(G: PermGroup, H: PermGroup) -> CosetAction:
    return CosetAction(G, H)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G contained in H."""
    if not is_subgroup(H, G):
        raise ValueError("H is not a subgroup of G")
    if H.order() == 1:
        return trivial_group(G.degree)
    if is_normal_in(H, G):
        return H
    return coset_action(G, H).kernel()


# -- Sylow 2-subgroups and O^{2'} --------------------------------------------


def _two_part(n: int) -> int:
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def _element_two_part(p: Permutation) -> Permutation:
    n = p.order()
    odd = n // _two_part(n)
    return p**odd


def _find_involution(K: PermGroup, rng: random.Random) -> Permutation:
    while True:
        t = _element_two_part(K.random_element(rng))
        if not t.is_identity():
            return t ** (t.order() // 2)


def _sylow_2_in(G: PermGroup, K: PermGroup, rng: random.Random) -> PermGroup:
    """Sylow 2-subgroup of K; G only fixes the ambient degree."""
    target = _two_part(K.order())
    if target == 1:
        return trivial_group(G.degree)
    if K.order() == target:
        return K
    x = _find_involution(K, rng)
    C = centralizer(K, x)
    if C.order() < K.order():
        P = _sylow_2_in(G, C, rng)
    else:
        # x is central in K; seed the normalizer ascent with <x>
        P = PermGroup([x], G.degree)
    # ascend: P is normal in N_K(P), so P<t> is a 2-group for any
    # 2-element t of the normalizer, and |N_K(P)|_2 > |P| while P is
    # not yet Sylow
    while P.order() < target:
        N = normalizer(K, P)
        found = None
        for _ in range(500 * max(1, len(N.generators))):
            t = _element_two_part(N.random_element(rng))
            if not t.is_identity() and not P.contains_images(t.images):
                found = t
                break
        if found is None:
            raise RuntimeError("sylow_2: sampling budget exhausted, retry with another seed")
        P = PermGroup(P.generators + [found], G.degree)
    return P


def sylow_2(G: PermGroup, seed: int = 0) -> PermGroup:
    """A Sylow 2-subgroup, deterministic for a fixed seed.

    Descends into centralizers of involutions (2-central involutions pull
    the full Sylow subgroup down into a much smaller group), finishing
    with a normalizer ascent when the descent stalls.
    """
    rng = random.Random(seed)
    return _sylow_2_in(G, G, rng)


def o_2prime(G: PermGroup, seed: int = 0) -> PermGroup:
    """Smallest normal subgroup with odd-order quotient: the normal closure
    of a Sylow 2-subgroup."""
    P = sylow_2(G, seed=seed)
    if P.order() == 1:
        return trivial_group(G.degree)
    return normal_closure(G, P.generators)

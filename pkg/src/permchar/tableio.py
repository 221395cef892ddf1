"""Character-table files, and matching table columns to group classes.

The file grammar is line-oriented ASCII: `name`, `order`, `classes k`,
then `sizes`, `orders`, one `power p ...` line per stored prime (class
indices are 0-based), then k `chi ...` rows whose entries use the
cyclotomic rendering grammar. Tables are fully validated on load.

For groups too large to enumerate classes, `find_representatives` matches
table columns to sampled group elements by invariant fingerprints (element
order and fixed-point counts of powers in the group's own action),
propagating the table's power maps. Columns that only algebraic
conjugacy distinguishes are reported as ambiguity groups; rational class
functions cannot see the difference.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from .charfun import CharacterTable, CharacterTableError, ClassFunction, decompose
from .cyclo import parse_cyclotomic, render_cyclotomic
from .group import PermGroup
from .perm import Permutation, power_images


class TableSyntaxError(ValueError):
    """Malformed table file; message carries the line number."""


def parse_table(text: str, validate: bool = True) -> CharacterTable:
    name = None
    order = None
    k = None
    sizes = None
    orders = None
    power_maps = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "name":
                name = fields[1] if len(fields) > 1 else ""
            elif key == "order":
                order = int(fields[1])
            elif key == "classes":
                k = int(fields[1])
            elif key == "sizes":
                sizes = [int(x) for x in fields[1:]]
            elif key == "orders":
                orders = [int(x) for x in fields[1:]]
            elif key == "power":
                power_maps[int(fields[1])] = tuple(int(x) for x in fields[2:])
            elif key == "chi":
                rows.append([parse_cyclotomic(tok) for tok in fields[1:]])
            else:
                raise TableSyntaxError(f"line {lineno}: unknown directive {key!r}")
        except TableSyntaxError:
            raise
        except (ValueError, IndexError) as exc:
            raise TableSyntaxError(f"line {lineno}: {exc}") from None
    for what, val in [("name", name), ("order", order), ("classes", k),
                      ("sizes", sizes), ("orders", orders)]:
        if val is None:
            raise TableSyntaxError(f"missing {what} line")
    if len(sizes) != k or len(orders) != k:
        raise TableSyntaxError("sizes/orders length differs from declared class count")
    if len(rows) != k:
        raise TableSyntaxError(f"expected {k} chi rows, found {len(rows)}")
    for p, pm in power_maps.items():
        if len(pm) != k or any(not 0 <= x < k for x in pm):
            raise TableSyntaxError(f"power map {p} is not a map on 0..{k-1}")
    table = CharacterTable(name, order, sizes, orders, power_maps, rows)
    if validate:
        table.validate()
    return table


def serialize_table(table: CharacterTable) -> str:
    out = [
        f"name {table.name}",
        f"order {table.order}",
        f"classes {table.n_classes}",
        "sizes " + " ".join(str(s) for s in table.sizes),
        "orders " + " ".join(str(o) for o in table.orders),
    ]
    for p in sorted(table.power_maps):
        out.append(f"power {p} " + " ".join(str(x) for x in table.power_maps[p]))
    for row in table.rows:
        out.append("chi " + " ".join(render_cyclotomic(v) for v in row.values))
    return "\n".join(out) + "\n"


def load_table(path, validate: bool = True) -> CharacterTable:
    return parse_table(Path(path).read_text(), validate=validate)


def save_table(path, table: CharacterTable, header: str = "") -> None:
    text = serialize_table(table)
    if header:
        text = "".join(f"# {line}\n" for line in header.splitlines()) + text
    Path(path).write_text(text)


def bundled_table(name: str) -> CharacterTable:
    from .corpus import data_dir

    return load_table(data_dir() / "tables" / f"{name}.ctbl")


def tables_match(A: CharacterTable, B: CharacterTable) -> bool:
    """Exact equality up to a row and column permutation.

    Columns are matched respecting sizes, orders and the shared power
    maps; rows must then coincide as multisets of value tuples.
    """
    k = A.n_classes
    if A.order != B.order or k != B.n_classes:
        return False
    if sorted(A.degrees) != sorted(B.degrees):
        return False
    candidates = [
        [
            c
            for c in range(k)
            if B.sizes[c] == A.sizes[a] and B.orders[c] == A.orders[a]
        ]
        for a in range(k)
    ]
    shared_primes = sorted(set(A.power_maps) & set(B.power_maps))
    sigma: list = [None] * k
    used = [False] * k

    def power_consistent(a: int, c: int) -> bool:
        for p in shared_primes:
            ta, tb = A.power_maps[p][a], B.power_maps[p][c]
            if sigma[ta] is not None and sigma[ta] != tb:
                return False
        return True

    def rows_agree() -> bool:
        inv = [0] * k
        for a, c in enumerate(sigma):
            inv[c] = a
        def keyed(rows):
            return sorted(
                (tuple(vals) for vals in rows),
                key=lambda t: [v.sort_key() for v in t],
            )
        a_rows = keyed(tuple(r.values[inv[c]] for c in range(k)) for r in A.rows)
        b_rows = keyed(tuple(r.values) for r in B.rows)
        return a_rows == b_rows

    def backtrack(a: int) -> bool:
        if a == k:
            return rows_agree()
        for c in candidates[a]:
            if not used[c] and power_consistent(a, c):
                sigma[a] = c
                used[c] = True
                if backtrack(a + 1):
                    return True
                sigma[a] = None
                used[c] = False
        return False

    return backtrack(0)


# -- matching table columns to group classes --------------------------------------


class MatchingError(RuntimeError):
    pass


@dataclass
class ClassMatching:
    """Representatives for each table column of a live group.

    `reps[c]` lies in the class of column c for every resolution of the
    declared `ambiguity_groups` (tuples of column indices that only
    algebraic conjugacy separates; any rational class function is constant
    on each group).
    """

    table: CharacterTable
    group: PermGroup
    reps: list
    ambiguity_groups: list
    samples_used: int

    def perm_character_values(self, count_fixed) -> ClassFunction:
        """Build a class function from a fixed-point counter over reps."""
        return ClassFunction([count_fixed(r) for r in self.reps])

    def alternate_reps(self) -> list:
        """A second full representative set with every ambiguity group's
        orientation swapped (for harmlessness checks)."""
        out = list(self.reps)
        for grp in self.ambiguity_groups:
            if len(grp) == 2:
                a, b = grp
                out[a], out[b] = out[b], out[a]
        return out


def _fingerprint(images: tuple, order: int) -> tuple:
    fixed = []
    for d in _divisors(order):
        pw = power_images(images, d)
        fixed.append(sum(1 for i, j in enumerate(pw) if i == j))
    return (order, tuple(fixed))


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


class _Sampler:
    """Bucket store for sampled elements.

    Buckets are keyed (fingerprint, class size or None): the class size is
    probed by exact orbit enumeration, but only for element orders whose
    table columns come in several sizes (same-order non-conjugate classes
    can share a fingerprint, e.g. the two order-4 classes of M22 on 22
    points). Probed orbits are cached, so each such class is enumerated
    once."""

    def __init__(self, G: PermGroup, table: CharacterTable):
        self.G = G
        self.table = table
        self.split_sizes: dict = {}
        for o in set(table.orders):
            sizes = {table.sizes[c] for c in range(table.n_classes) if table.orders[c] == o}
            if len(sizes) > 1:
                self.split_sizes[o] = sizes
        self.buckets: dict = {}
        self._probed: dict = {o: [] for o in self.split_sizes}
        identity = tuple(range(G.degree))
        self.add(identity, 1)

    def key_of(self, images: tuple, order: int) -> tuple:
        fp = _fingerprint(images, order)
        if order not in self.split_sizes:
            return (fp, None)
        for orbit, size in self._probed[order]:
            if images in orbit:
                return (fp, size)
        orbit = _class_orbit(self.G, images)
        self._probed[order].append((orbit, len(orbit)))
        return (fp, len(orbit))

    def add(self, images: tuple, order: int) -> tuple:
        key = self.key_of(images, order)
        if key not in self.buckets:
            self.buckets[key] = images
        return key


def _class_orbit(G: PermGroup, images: tuple) -> frozenset:
    from .perm import conj_images

    gens = [g.images for g in G.generators]
    seen = {images}
    queue = [images]
    while queue:
        y = queue.pop()
        for g in gens:
            z = conj_images(y, g)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


def find_representatives(
    G: PermGroup,
    table: CharacterTable,
    seed: int = 0,
    budget: int | None = None,
    chunk: int = 200,
) -> ClassMatching:
    """Sample seeded-uniform elements of G until every table column has a
    consistent representative.

    Fingerprints are (element order, fixed points of every power) in G's
    own permutation action, refined by an exact class-size probe where the
    table demands it. Power harvesting (all powers of each sample) reaches
    small classes quickly. The assignment search is deterministic;
    ambiguity groups come out as the column sets that only algebraic
    conjugacy separates.
    """
    if G.order() != table.order:
        raise MatchingError(
            f"group order {G.order()} differs from table order {table.order}"
        )
    k = table.n_classes
    if budget is None:
        budget = 10_000 * k
    rng = random.Random(seed)
    sampler = _Sampler(G, table)
    used = 0
    last_error = "no sampling performed"
    while True:
        round_size = min(chunk, budget - used)
        for _ in range(round_size):
            g = G.random_element(rng).images
            o = _order_of(g)
            for d in _divisors(o):
                sampler.add(power_images(g, d), o // gcd(o, d))
        used += round_size
        try:
            return _assign(G, table, sampler, used)
        except MatchingError as exc:
            last_error = str(exc)
            if used >= budget:
                raise MatchingError(
                    f"no consistent matching within the sampling budget ({used} samples): "
                    f"{last_error}"
                ) from None


def _order_of(images: tuple) -> int:
    from .perm import order_of_images

    return order_of_images(images)


def _assign(G: PermGroup, table: CharacterTable, sampler: _Sampler, used: int) -> ClassMatching:
    k = table.n_classes
    primes = sorted(table.power_maps)
    buckets = sampler.buckets

    # close the bucket set under p-th powers so search domains are complete
    queue = list(buckets)
    power_bucket: dict = {}
    processed: set = set()
    while queue:
        key = queue.pop()
        if key in processed:
            continue
        processed.add(key)
        for p in primes:
            h = power_images(buckets[key], p)
            key2 = sampler.add(h, _order_of(h))
            power_bucket[(key, p)] = key2
            if key2 not in processed:
                queue.append(key2)

    by_order: dict = {}
    for key in buckets:
        by_order.setdefault(key[0][0], []).append(key)
    for keys in by_order.values():
        keys.sort()
    for c in range(k):
        if table.orders[c] not in by_order:
            raise MatchingError(f"no element of order {table.orders[c]} sampled yet")

    # deterministic backtracking: columns in index order, domains sorted;
    # the table's power maps must commute with bucket powers and probed
    # sizes must agree
    assignment: dict = {}
    solutions: list = []

    def consistent(c: int, key: tuple) -> bool:
        fp, size = key
        if table.orders[c] != fp[0]:
            return False
        if size is not None and size != table.sizes[c]:
            return False
        for p in primes:
            tgt = table.power_maps[p][c]
            key2 = power_bucket[(key, p)]
            if key2[0][0] != table.orders[tgt]:
                return False
            if tgt in assignment and assignment[tgt] != key2:
                return False
        return True

    def extend(c: int):
        if len(solutions) > 64:
            return
        if c == k:
            solutions.append(dict(assignment))
            return
        for key in by_order[table.orders[c]]:
            if consistent(c, key):
                assignment[c] = key
                extend(c + 1)
                del assignment[c]

    extend(0)
    # every sampled bucket is a genuine class, so a correct assignment uses
    # them all; drop solutions that leave buckets unexplained
    full = [s for s in solutions if set(s.values()) == set(buckets)]
    if not full:
        if solutions:
            raise MatchingError(
                "assignments exist but leave sampled fingerprints unused "
                "(some class is not yet distinguishable)"
            )
        raise MatchingError("no fingerprint assignment satisfies the power maps")

    chosen = full[0]
    reps = _derive_reps(G, table, buckets, chosen)
    ambiguity = _ambiguity_groups(table, chosen, full)
    matching = ClassMatching(table, G, reps, ambiguity, used)
    _validate_matching(G, matching)
    return matching


def _derive_reps(G, table, buckets, assignment) -> list:
    """One element per column; columns sharing a bucket take successive
    power-map images so conjugate partners get distinct, consistent reps."""
    k = table.n_classes
    primes = sorted(table.power_maps)
    reps: list = [None] * k
    shared: dict = {}
    for c in range(k):
        shared.setdefault(assignment[c], []).append(c)
    for fp, cols in shared.items():
        reps[cols[0]] = buckets[fp]
    # propagate through power maps until every column has an element
    progress = True
    while progress:
        progress = False
        for c in range(k):
            if reps[c] is None:
                continue
            for p in primes:
                tgt = table.power_maps[p][c]
                if reps[tgt] is None:
                    reps[tgt] = power_images(reps[c], p)
                    progress = True
    missing = [c for c in range(k) if reps[c] is None]
    if missing:
        raise MatchingError(
            f"columns {missing} unreachable through power maps from sampled reps"
        )
    return [Permutation(r) for r in reps]


def _ambiguity_groups(table, chosen, solutions) -> list:
    k = table.n_classes
    shared: dict = {}
    for c in range(k):
        shared.setdefault(chosen[c], []).append(c)
    groups = [tuple(cols) for cols in shared.values() if len(cols) > 1]
    # columns whose bucket differs between surviving solutions are ambiguous
    # at the bucket level too
    for c in range(k):
        fps = {tuple(sol[c]) for sol in solutions}
        if len(fps) > 1 and not any(c in g for g in groups):
            partners = tuple(
                sorted(
                    c2
                    for c2 in range(k)
                    if {tuple(sol[c2]) for sol in solutions} == fps
                )
            )
            if partners not in groups:
                groups.append(partners)
    return sorted(groups)


def _validate_matching(G: PermGroup, matching: ClassMatching) -> None:
    table = matching.table
    for c, r in enumerate(matching.reps):
        if r.order() != table.orders[c]:
            raise MatchingError(f"rep for column {c} has wrong order")
    # the natural permutation character must decompose integrally
    pi = ClassFunction([r.fixed_points() for r in matching.reps])
    try:
        decompose(pi, table)
    except ValueError as exc:
        raise MatchingError(f"natural permutation character rejects matching: {exc}") from None

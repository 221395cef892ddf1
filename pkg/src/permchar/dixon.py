"""Character tables via the Dixon-Schneider method.

Class-multiplication structure constants are computed exactly; the table
is first found modulo a prime p = 1 (mod exp(G)) with p > 2*sqrt(|G|) by
splitting the common eigenspaces of the class matrices, then lifted to
exact cyclotomic values by the discrete Fourier sum over each element
order. The lifted table is validated (both orthogonality relations) before
it is returned.
"""

from __future__ import annotations

from fractions import Fraction

from .charfun import CharacterTable, ClassFunction
from .classes import ConjugacyClassSet, conjugacy_classes
from .cyclo import Cyclotomic, euler_phi
from .group import PermGroup
from .perm import inv_images, mul_images

# -- modular number theory helpers ---------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit-ish inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def dixon_prime(exponent: int, group_order: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p^2 > 4*|G|."""
    p = exponent + 1
    while True:
        if p * p > 4 * group_order and is_prime(p):
            return p
        p += exponent


def primitive_root(p: int) -> int:
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
        g += 1


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a quadratic residue mod the odd prime p."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError("not a quadratic residue")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _poly_mul_mod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_rem(out, f, p)


def _poly_rem(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    out = a[:df]
    while out and out[-1] == 0:
        out.pop()
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        a, b = b, _trim(_poly_rem(a, b, p))
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _poly_pow_x(e: int, f, p):
    """x^e mod f."""
    result = [1]
    base = [0, 1] if len(f) > 2 else _poly_rem([0, 1], f, p)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, f, p)
        base = _poly_mul_mod(base, base, f, p)
        e >>= 1
    return result


def poly_roots_mod(f, p: int) -> list:
    """Distinct roots in F_p of the polynomial f (low-to-high coeffs)."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []
    # keep only the part splitting into distinct linear factors
    xp = _poly_pow_x(p, f, p)
    xp_minus_x = list(xp)
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _poly_gcd(f, xp_minus_x, p)
    roots = []
    _split_linear(g, p, 0, roots)
    return sorted(roots)


def _split_linear(g, p, shift, roots):
    """Equal-degree (degree 1) splitting, deterministic shift sequence."""
    g = list(g)
    while g and g[-1] == 0:
        g.pop()
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        # g = c0 + c1 x -> root -c0/c1
        roots.append((-g[0] * pow(g[1], p - 2, p)) % p)
        return
    if g[0] == 0:
        roots.append(0)
        _split_linear(_poly_rem_x(g), p, shift, roots)
        return
    a = shift
    while True:
        # h = (x + a)^((p-1)/2) - 1 mod g
        base = _poly_rem([a, 1], g, p)
        h = list(_pow_poly_mod(base, (p - 1) // 2, g, p)) or [0]
        h[0] = (h[0] - 1) % p
        d = _poly_gcd(g, h, p)
        if 0 < len(d) - 1 < deg:
            _split_linear(d, p, a + 1, roots)
            _split_linear(_poly_exact_div(g, d, p), p, a + 1, roots)
            return
        a += 1


def _poly_rem_x(g):
    return g[1:]


def _pow_poly_mod(base, e, f, p):
    result = [1]
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, f, p)
        base = _poly_mul_mod(base, base, f, p)
        e >>= 1
    return result


def _poly_exact_div(a, b, p):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead % p
        q[i] = c
        if c:
            for j in range(len(b)):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return q


# -- class matrices ---------------------------------------------------------------


class ClassMatrix:
    """Structure constants for one acting class.

    entries[j][k] = number of x in class i with x^-1 * z_k in class j,
    i.e. the number of ways a class-i by class-j product lands on the
    fixed representative z_k of class k. Columns sum to |class i|.
    """

    def __init__(self, index: int, entries: list):
        self.index = index
        self.entries = entries

    def check_column_sums(self, sizes) -> bool:
        k = len(self.entries)
        return all(
            sum(self.entries[j][col] for j in range(k)) == sizes[self.index]
            for col in range(k)
        )


def class_members(C: ConjugacyClassSet, i: int):
    """All image tuples of one class, regenerated by conjugation orbit."""
    G = C.group
    gens = [g.images for g in G.generators]
    inv_gens = [inv_images(g) for g in gens]
    rng_n = range(G.degree)
    start = C.reps[i].images
    orbit = {start}
    queue = [start]
    while queue:
        y = queue.pop()
        for g, gi in zip(gens, inv_gens):
            z = tuple(g[y[gi[t]]] for t in rng_n)
            if z not in orbit:
                orbit.add(z)
                queue.append(z)
    return orbit


def class_matrix(C, i: int, classify=None) -> ClassMatrix:
    """Exact structure constants for acting class i.

    `classify` maps an image tuple to its class index; defaults to the
    enumerated element-class map.
    """
    k = len(C.reps)
    if classify is None:
        classify = C.element_class_map().__getitem__
    entries = [[0] * k for _ in range(k)]
    reps = [r.images for r in C.reps]
    for x in class_members(C, i):
        xi = inv_images(x)
        for col in range(k):
            j = classify(mul_images(xi, reps[col]))
            entries[j][col] += 1
    return ClassMatrix(i, entries)


def class_matrices(G: PermGroup, C: ConjugacyClassSet | None = None) -> list:
    """All class matrices, in class order."""
    if C is None:
        C = conjugacy_classes(G)
    classify = C.element_class_map().__getitem__
    return [class_matrix(C, i, classify) for i in range(len(C))]


# -- eigenspace splitting -----------------------------------------------------------


class _Solver:
    """Repeated expresses vectors in a fixed subspace basis (mod p)."""

    def __init__(self, basis, p):
        self.p = p
        self.basis = [list(b) for b in basis]
        self.k = len(basis[0])
        self.rows = []  # (pivot, reduced row, coord row)
        for i, b in enumerate(self.basis):
            row = list(b)
            coords = [0] * len(self.basis)
            coords[i] = 1
            for piv, rrow, crow in self.rows:
                f = row[piv]
                if f:
                    row = [(x - f * y) % p for x, y in zip(row, rrow)]
                    coords = [(x - f * y) % p for x, y in zip(coords, crow)]
            piv = next((c for c in range(self.k) if row[c]), None)
            if piv is None:
                raise ArithmeticError("basis is dependent")
            inv = pow(row[piv], p - 2, p)
            row = [x * inv % p for x in row]
            coords = [x * inv % p for x in coords]
            self.rows.append((piv, row, coords))

    def coords_of(self, vec):
        p = self.p
        v = [x % p for x in vec]
        out = [0] * len(self.basis)
        for piv, rrow, crow in self.rows:
            f = v[piv]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, rrow)]
                out = [(x + f * y) % p for x, y in zip(out, crow)]
        if any(v):
            raise ArithmeticError("vector escapes the subspace (not invariant?)")
        return out


def _charpoly_mod(mat, p):
    """det(xI - mat) over F_p via Hessenberg reduction (works for any p,
    unlike point interpolation, which needs p > dim)."""
    d = len(mat)
    H = [[x % p for x in row] for row in mat]
    for col in range(d - 2):
        piv = next((r for r in range(col + 1, d) if H[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            H[piv], H[col + 1] = H[col + 1], H[piv]
            for row in H:
                row[piv], row[col + 1] = row[col + 1], row[piv]
        inv = pow(H[col + 1][col], p - 2, p)
        for r in range(col + 2, d):
            f = H[r][col] * inv % p
            if f:
                H[r] = [(a - f * b) % p for a, b in zip(H[r], H[col + 1])]
                for rr in range(d):
                    H[rr][col + 1] = (H[rr][col + 1] + f * H[rr][r]) % p
    # charpoly recurrence for Hessenberg matrices
    polys = [[1]]
    for k in range(1, d + 1):
        prev = polys[k - 1]
        cur = [0] + list(prev)
        hkk = H[k - 1][k - 1]
        for j in range(len(prev)):
            cur[j] = (cur[j] - hkk * prev[j]) % p
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = prod * H[i + 1][i] % p
            if prod == 0:
                break
            f = H[i][k - 1] * prod % p
            if f:
                pi = polys[i]
                for j in range(len(pi)):
                    cur[j] = (cur[j] - f * pi[j]) % p
        polys.append(cur)
    return polys[d]


def _kernel_mod(mat, p):
    """Basis of the kernel of mat (d x d) over F_p."""
    d = len(mat)
    m = [[x % p for x in row] for row in mat]
    pivots = {}
    row = 0
    for col in range(d):
        piv = next((r for r in range(row, d) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], p - 2, p)
        m[row] = [x * inv % p for x in m[row]]
        for r in range(d):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[row])]
        pivots[col] = row
        row += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * d
        v[fc] = 1
        for col, r in pivots.items():
            v[col] = (-m[r][fc]) % p
        basis.append(v)
    return basis


# -- the Dixon-Schneider driver --------------------------------------------------------


def character_table(
    G: PermGroup,
    C=None,
    threshold: int | None = None,
    name: str = "",
    matrix_order: list | None = None,
) -> CharacterTable:
    """Ordinary character table of an enumerable group.

    Deterministic: classes in their canonical order, rows sorted by degree
    and then by value tuples. `C` may be any class-data object exposing
    reps/sizes/orders/exponent/inverse_map/power_maps, class_of and a
    classify callable; `matrix_order` overrides the order in which class
    matrices are consumed (defaults to class index order).
    """
    if C is None:
        C = conjugacy_classes(G) if threshold is None else conjugacy_classes(G, threshold)
    k = len(C.reps)
    order = G.order()
    if k == 1:
        table = CharacterTable(name or "trivial", 1, [1], [1], {2: (0,)}, [[Fraction(1)]])
        table.validate()
        return table
    exponent = C.exponent
    p = dixon_prime(exponent, order)
    w = primitive_root(p)
    z_e = pow(w, (p - 1) // exponent, p)

    classify = getattr(C, "classify", None) or C.element_class_map().__getitem__
    inverse_map = C.inverse_map

    # split common eigenspaces of the class matrices over F_p, class by
    # class, stopping once every space is one-dimensional
    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for i in matrix_order or range(1, k):
        if all(len(b) == 1 for b in spaces):
            break
        A = class_matrix(C, i, classify).entries
        spaces = _resplit(spaces, A, p, k)
    if not all(len(b) == 1 for b in spaces):
        raise AssertionError("eigenspace splitting failed to reach dimension one")

    # assemble omega vectors, normalized so the identity coordinate is 1
    omegas = []
    for basis in spaces:
        v = basis[0]
        if v[0] == 0:
            raise AssertionError("eigenvector with zero identity coordinate")
        inv = pow(v[0], p - 2, p)
        omegas.append([x * inv % p for x in v])

    sizes = C.sizes
    inv_sizes = [pow(s, p - 2, p) for s in sizes]
    rows = []
    for om in omegas:
        s = sum(om[t] * om[inverse_map[t]] % p * inv_sizes[t] for t in range(k)) % p
        deg_sq = order * pow(s, p - 2, p) % p
        deg = sqrt_mod(deg_sq, p)
        if deg > p // 2:
            deg = p - deg
        chi_mod = [om[t] * deg % p * inv_sizes[t] % p for t in range(k)]
        values = [Cyclotomic.rational(deg)]
        for t in range(1, k):
            m = C.orders[t]
            zm = pow(z_e, exponent // m, p)
            zm_inv = pow(zm, p - 2, p)
            inv_m = pow(m, p - 2, p)
            coeffs = [0] * m
            chis = [chi_mod[C.power_class(t, s_exp)] for s_exp in range(m)]
            for texp in range(m):
                acc = 0
                for s_exp in range(m):
                    acc = (acc + chis[s_exp] * pow(zm_inv, s_exp * texp, p)) % p
                mt = acc * inv_m % p
                # true multiplicities are at most the degree < p/2
                if 2 * mt >= p:
                    raise AssertionError("eigenvalue multiplicity exceeded the prime bound")
                coeffs[texp] = mt
            if sum(coeffs) != deg:
                raise AssertionError("eigenvalue multiplicities do not sum to the degree")
            values.append(Cyclotomic(m, tuple(Fraction(c) for c in coeffs)))
        rows.append(values)

    one = Cyclotomic.rational(1)
    rows.sort(
        key=lambda vals: (
            vals[0].as_rational(),
            not all(v == one for v in vals),  # trivial character first
            [v.sort_key() for v in vals],
        )
    )
    table = CharacterTable(
        name or f"order{order}",
        order,
        sizes,
        C.orders,
        C.power_maps,
        rows,
    )
    table.validate()
    return table


def _resplit(spaces, A, p, k):
    """Split each current subspace by the eigenvalues of A restricted to it."""
    out = []
    for basis in spaces:
        if len(basis) == 1:
            out.append(basis)
            continue
        solver = _Solver(basis, p)
        d = len(basis)
        R = [[0] * d for _ in range(d)]
        for m_i, v in enumerate(basis):
            img = [sum(A[r][c] * v[c] for c in range(k)) % p for r in range(k)]
            for t, c in enumerate(solver.coords_of(img)):
                R[t][m_i] = c
        roots = poly_roots_mod(_charpoly_mod(R, p), p)
        for lam in roots:
            shifted = [
                [(R[a][b] - (lam if a == b else 0)) % p for b in range(d)] for a in range(d)
            ]
            sub = []
            for kv in _kernel_mod(shifted, p):
                vec = [0] * k
                for coef, bvec in zip(kv, basis):
                    if coef:
                        for idx in range(k):
                            vec[idx] = (vec[idx] + coef * bvec[idx]) % p
                sub.append(vec)
            if sub:
                out.append(sub)
    return out

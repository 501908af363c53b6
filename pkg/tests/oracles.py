"""Brute-force reference computations that share no algebra with the package.

Everything here works on plain lists and sympy matrices, so agreement with
the package is evidence rather than a tautology.
"""

import itertools
import random

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def rank(rows, ncols):
    if not rows or not ncols:
        return 0
    return Matrix(rows).rank()


def torsion_of(rows, ncols):
    """Invariant factors > 1 of an integer matrix given by rows."""
    if not rows or not ncols:
        return []
    facs = invariant_factors(Matrix(rows), domain=ZZ)
    return sorted(int(abs(d)) for d in facs if d != 0 and abs(d) != 1)


def free_cohomology(dims, diffs):
    """Cohomology of a free cochain complex Z^dims[0] -> Z^dims[1] -> ...

    ``diffs[n]`` has dims[n+1] rows and dims[n] columns.  Returns a list of
    (free rank, torsion list) for degrees 0..len(diffs)-1.
    """
    out = []
    for n in range(len(diffs)):
        r_out = rank(diffs[n], dims[n])
        r_in = rank(diffs[n - 1], dims[n - 1]) if n else 0
        tors = torsion_of(diffs[n - 1], dims[n - 1]) if n else []
        out.append((dims[n] - r_out - r_in, tors))
    return out


def canonical_list(result):
    """Package CohomologyResult as the oracle's (free rank, torsion) list."""
    return [(g.free_rank, list(g.invariant_factors)) for g in result.groups]


# -- complexes --------------------------------------------------------------------------------


def closure(maximal):
    faces = set()
    for s in maximal:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            faces.update(itertools.combinations(s, k))
    return faces


def random_complex(rng, max_vertices=8, max_dim=2):
    n = rng.randint(3, max_vertices)
    maximal = [(v,) for v in range(n)]
    for _ in range(rng.randint(2, 2 * n)):
        k = rng.randint(2, max_dim + 1)
        maximal.append(tuple(sorted(rng.sample(range(n), k))))
    return n, maximal


def unimodular(rng, k):
    """A random matrix in GL_k(Z) with small entries, plus its inverse."""
    M = Matrix.eye(k)
    for _ in range(3):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i != j:
            E = Matrix.eye(k)
            E[i, j] = rng.choice([-1, 1])
            M = M * E
    if rng.random() < 0.5:
        D = Matrix.diag(*[rng.choice([-1, 1]) for _ in range(k)])
        M = M * D
    return M, M.inv()


def z2_cocycles(n, simplices):
    """All Z/2-valued 1-cocycles by exhaustive search over edge labelings."""
    edges = sorted(s for s in simplices if len(s) == 2)
    tris = [s for s in simplices if len(s) == 3]
    # a basis via elimination mod 2 would be faster; brute force is fine for <= 16 edges
    if len(edges) > 16:
        return edges, None
    index = {e: i for i, e in enumerate(edges)}
    cocycles = []
    for bits in itertools.product((0, 1), repeat=len(edges)):
        if all((bits[index[(a, b)]] + bits[index[(b, c)]] + bits[index[(a, c)]]) % 2 == 0 for a, b, c in tris):
            cocycles.append(bits)
    return edges, cocycles


def random_local_system(rng, n, simplices):
    """Rank-k local system: gauge matrices twisted by a random sign cocycle.

    Returns (k, action) where action[(v, w)] is the matrix A(w) -> A(v) for
    every oriented edge.
    """
    k = rng.choice([1, 1, 2])
    edges, cocycles = z2_cocycles(n, simplices)
    if cocycles is None:
        bits = [0] * len(edges)
    else:
        bits = rng.choice(cocycles)
    signs = [rng.choice([-1, 1]) for _ in range(k)]
    gauge = {v: unimodular(rng, k) for v in range(n)}
    action = {}
    for (a, b), c in zip(edges, bits):
        D = Matrix.diag(*[(s if c else 1) for s in signs])
        Ua, Ua_inv = gauge[a]
        Ub, Ub_inv = gauge[b]
        action[(a, b)] = Ua * D * Ub_inv
        action[(b, a)] = Ub * D * Ua_inv
    return k, action


def local_system_cohomology(n, simplices, k, action, top):
    """Increasing-order simplicial cochains with local coefficients.

    The basis is one copy of Z^k per simplex (sorted vertex tuple), based at
    its least vertex; the zeroth face is transported along the first edge.
    """
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for d in by_dim:
        by_dim[d].sort()
    dims = [k * len(by_dim.get(d, [])) for d in range(top + 2)]
    diffs = []
    for d in range(top + 1):
        src = by_dim.get(d, [])
        tgt = by_dim.get(d + 1, [])
        pos = {s: i for i, s in enumerate(src)}
        M = [[0] * dims[d] for _ in range(dims[d + 1])]
        for r, s in enumerate(tgt):
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                c = pos[face]
                block = action[(s[0], s[1])] if j == 0 else Matrix.eye(k)
                sign = -1 if j % 2 else 1
                for a in range(k):
                    for b in range(k):
                        M[r * k + a][c * k + b] += sign * int(block[a, b])
        diffs.append(M)
    return free_cohomology(dims, diffs)


# -- quotients and subdivision ---------------------------------------------------------------------


def subdivide(simplices, action):
    """Barycentric subdivision: vertices are simplices, simplices are flags."""
    cells = sorted(simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(cells)}
    flags = set()
    for top in cells:
        for perm in itertools.permutations(top):
            chain = [index[tuple(sorted(perm[:j]))] for j in range(1, len(top) + 1)]
            for k in range(1, len(chain) + 1):
                for sub in itertools.combinations(chain, k):
                    flags.add(tuple(sorted(sub)))
    new_action = [[index[tuple(sorted(g[v] for v in s))] for s in cells] for g in action]
    return flags, new_action


def quotient(simplices, action):
    """Vertex orbits and the images of simplices, as a plain set system."""
    n = len(action[0])
    orbit_id = {}
    for v in range(n):
        if v not in orbit_id:
            orb = {g[v] for g in action}
            m = len(set(orbit_id.values()))
            for u in orb:
                orbit_id[u] = m
    images = {tuple(sorted({orbit_id[v] for v in s})) for s in simplices}
    return len(set(orbit_id.values())), images


def is_simplicial_quotient(simplices, action):
    """True when the naive quotient is a simplicial complex homeomorphic to X/G.

    Needs: no simplex loses vertices, and simplices with the same image form
    a single orbit.
    """
    n = len(action[0])
    orbit_id = {v: min(g[v] for g in action) for v in range(n)}
    owners = {}
    for s in simplices:
        img = tuple(sorted({orbit_id[v] for v in s}))
        if len(img) != len(s):
            return False
        orbit = frozenset(tuple(sorted(g[v] for v in s)) for g in action)
        owners.setdefault(img, set()).add(orbit)
    return all(len(o) == 1 for o in owners.values())


def constant_cohomology(simplices, top):
    n = 1 + max(max(s) for s in simplices)
    action = {}
    for s in simplices:
        if len(s) == 2:
            action[(s[0], s[1])] = Matrix.eye(1)
            action[(s[1], s[0])] = Matrix.eye(1)
    return local_system_cohomology(n, simplices, 1, action, top)


def orbit_space_oracle(simplices, action, top):
    """Cohomology of X/G, subdividing until the quotient is simplicial."""
    simplices = set(simplices)
    for _ in range(3):
        if is_simplicial_quotient(simplices, action):
            break
        simplices, action = subdivide(simplices, action)
    _, images = quotient(simplices, action)
    return constant_cohomology(images, top)


# -- representation-ring equalizer ---------------------------------------------------------------


def brute_characters(mul, elements):
    """Homomorphisms into Z/order, i.e. exponents of roots of unity, by exhaustive search."""
    order = len(elements)
    found = []
    for assignment in itertools.product(range(order), repeat=order):
        ok = True
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                c = elements.index(mul[a][b])
                if (assignment[i] + assignment[j]) % order != assignment[c]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(assignment)
    return found


def rep_equalizer_rank(objects, generators, stabilizer_elements, mul):
    """Rank of the limit of the representation-ring system.

    ``objects`` are (vertex, subgroup elements) pairs; ``generators`` are
    (kind, source object, target object).  Relabel restricts characters,
    every other generator acts by the identity.
    """
    chars = {}
    for _, H in objects:
        if H not in chars:
            chars[H] = brute_characters(mul, list(H))
    offset, pos = {}, 0
    for o in objects:
        offset[o] = pos
        pos += len(chars[o[1]])
    rows = []
    for kind, src, tgt in generators:
        H, K = src[1], tgt[1]
        for i, chi in enumerate(chars[H]):
            row = [0] * pos
            row[offset[src] + i] += 1
            # the component of A(a)(c_tgt) on character chi of H
            if kind == "relabel":
                hidx = [list(K).index(h) for h in H]
                order_k, order_h = len(K), len(H)
                for j, doubling in enumerate(chars[K]):
                    if all((doubling[hidx[m]] * order_h - chi[m] * order_k) % (order_h * order_k) == 0 for m in range(len(H))):
                        row[offset[tgt] + j] -= 1
            else:
                row[offset[tgt] + i] -= 1
            rows.append(row)
    kernel = Matrix(rows).nullspace() if rows else [None] * pos
    return len(kernel)


def brute_subgroups(mul):
    """All subgroups by filtering every subset containing the identity."""
    n = len(mul)
    out = []
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        elems = [g for g in range(n) if mask >> g & 1]
        s = set(elems)
        if all(mul[a][b] in s for a in elems for b in elems):
            out.append(tuple(elems))
    return out


def random_int_matrix(rng, rows, cols, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def seeded(seed):
    return random.Random(seed)

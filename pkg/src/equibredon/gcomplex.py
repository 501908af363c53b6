"""Finite simplicial complexes with simplicial actions of finite groups.

Ordered simplices are vertex tuples whose underlying set is a simplex and in
which no two consecutive entries coincide.  These are the nondegenerate
simplices of the ordered simplicial set of the complex; repeated but
non-adjacent vertices such as ``(a, b, a)`` are allowed and needed for the
cochain model to compute the right cohomology.
"""

from functools import cached_property
from itertools import permutations

from .errors import ComputationError, ValidationError
from .groups import trivial_group


class SimplicialComplex:
    """Simplices are sorted vertex tuples; the set is closed under faces."""

    def __init__(self, simplices, names=None, check=True):
        self.simplices = frozenset(tuple(sorted(s)) for s in simplices if len(s))
        self.vertices = tuple(sorted(s[0] for s in self.simplices if len(s) == 1))
        self.names = None if names is None else tuple(names)
        if check:
            self._check()

    def _check(self):
        for s in self.simplices:
            if len(set(s)) != len(s):
                raise ValidationError("NOT_CLOSED_UNDER_FACES", f"simplex {s} repeats a vertex")
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face and face not in self.simplices:
                    raise ValidationError(
                        "NOT_CLOSED_UNDER_FACES", f"face {face} of {s} is missing", witness=(s, face)
                    )

    @classmethod
    def from_maximal(cls, maximal, vertex_count=None, names=None):
        faces = set()
        for m in maximal:
            m = tuple(sorted(set(m)))
            for mask in range(1, 1 << len(m)):
                faces.add(tuple(v for i, v in enumerate(m) if mask >> i & 1))
        if vertex_count is not None:
            faces.update((v,) for v in range(vertex_count))
        return cls(faces, names=names, check=False)

    @property
    def vertex_count(self):
        return len(self.vertices)

    @cached_property
    def dim(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def by_dim(self):
        out = [[] for _ in range(self.dim + 1)]
        for s in self.simplices:
            out[len(s) - 1].append(s)
        return [sorted(x) for x in out]

    def simplices_of_dim(self, k):
        return self.by_dim[k] if 0 <= k <= self.dim else []

    @cached_property
    def maximal_simplices(self):
        sims = sorted(self.simplices, key=lambda s: (-len(s), s))
        out = []
        for s in sims:
            ss = set(s)
            if not any(ss < set(m) for m in out):
                out.append(s)
        return sorted(out)

    def is_simplex(self, vertices):
        return tuple(sorted(set(vertices))) in self.simplices

    @cached_property
    def neighbors(self):
        nb = {v: set() for v in self.vertices}
        for s in self.simplices_of_dim(1):
            nb[s[0]].add(s[1])
            nb[s[1]].add(s[0])
        return {v: tuple(sorted(x)) for v, x in nb.items()}

    def components(self):
        """Connected components as sorted vertex tuples."""
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.neighbors[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def name(self, v):
        return self.names[v] if self.names else str(v)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, vertices={self.vertex_count}, simplices={len(self.simplices)})"


class GComplex:
    """A finite group acting simplicially on a complex.

    ``action[g][v]`` is the image of vertex ``v`` under group element ``g``.
    Construction checks that the action is a homomorphism into simplicial
    automorphisms; admissibility is checked separately (see
    ``validate_gcomplex``).
    """

    def __init__(self, group, complex, action):
        self.group = group
        self.complex = complex
        self.action = tuple(tuple(p) for p in action)
        self.subdivisions = 0
        self._check_action()
        self._orbit_cache = {}
        self._stab_cache = {}

    def _check_action(self):
        G, X = self.group, self.complex
        verts = set(X.vertices)
        if len(self.action) != G.order:
            raise ValidationError("NOT_SIMPLICIAL_ACTION", "one permutation per group element is required")
        n = max(verts) + 1 if verts else 0
        if verts != set(range(n)):
            raise ValidationError("NOT_SIMPLICIAL_ACTION", "vertices must be numbered 0..n-1")
        for g, p in enumerate(self.action):
            if sorted(p) != list(range(n)):
                raise ValidationError("NOT_SIMPLICIAL_ACTION", f"element {g} does not permute the vertices", witness=g)
        for g, p in enumerate(self.action):
            for s in X.simplices:
                if tuple(sorted(p[v] for v in s)) not in X.simplices:
                    raise ValidationError(
                        "NOT_SIMPLICIAL_ACTION", f"element {g} sends simplex {s} outside the complex", witness=(g, s)
                    )
        e = G.identity
        if self.action[e] != tuple(range(n)):
            raise ValidationError("NOT_HOMOMORPHIC", "identity does not act trivially", witness=e)
        for a in range(G.order):
            pa = self.action[a]
            for b in range(G.order):
                pb = self.action[b]
                pab = self.action[G.mul[a][b]]
                if any(pab[v] != pa[pb[v]] for v in range(n)):
                    raise ValidationError("NOT_HOMOMORPHIC", f"action of {a}*{b} is not the composite", witness=(a, b))

    # -- basic queries -------------------------------------------------------------

    def act(self, g, v):
        return self.action[g][v]

    def act_tuple(self, g, t):
        p = self.action[g]
        return tuple(p[v] for v in t)

    def act_simplex(self, g, s):
        p = self.action[g]
        return tuple(sorted(p[v] for v in s))

    @property
    def vertex_count(self):
        return self.complex.vertex_count

    @property
    def dim(self):
        return self.complex.dim

    def admissibility_witness(self):
        """A pair (g, s) with g fixing s setwise but not pointwise, or None."""
        for g in range(self.group.order):
            p = self.action[g]
            for s in sorted(self.complex.simplices):
                if tuple(sorted(p[v] for v in s)) == s and any(p[v] != v for v in s):
                    return (g, s)
        return None

    @cached_property
    def is_admissible(self):
        return self.admissibility_witness() is None

    def stabilizer_of_vertices(self, vertices):
        key = frozenset(vertices)
        sub = self._stab_cache.get(key)
        if sub is None:
            sub = self.group.subgroup(
                (g for g in range(self.group.order) if all(self.action[g][v] == v for v in key)), check=False
            )
            self._stab_cache[key] = sub
        return sub

    def vertex_stabilizer(self, v):
        return self.stabilizer_of_vertices((v,))

    def vertex_orbit(self, v):
        return tuple(sorted({p[v] for p in self.action}))

    @cached_property
    def vertex_orbits(self):
        seen = set()
        out = []
        for v in self.complex.vertices:
            if v not in seen:
                orb = self.vertex_orbit(v)
                seen.update(orb)
                out.append(orb)
        return out

    def fixes(self, H, vertices):
        return all(self.action[h][v] == v for h in H for v in vertices)

    # -- ordered simplices -----------------------------------------------------------

    def ordered_simplices(self, n):
        """All ordered n-simplices in lexicographic order."""
        X = self.complex
        out = []

        def extend(t, verts):
            if len(t) == n + 1:
                out.append(t)
                return
            last = t[-1]
            for w in X.neighbors[last]:
                nv = verts | {w}
                if w in verts or X.is_simplex(nv):
                    extend(t + (w,), nv)

        for v in X.vertices:
            extend((v,), frozenset((v,)))
        return out

    def orbit_index(self, n, choice="least"):
        """``(reps, locate)`` for ordered n-simplices.

        ``reps`` lists ``(rep, pointwise stabilizer)``, one per orbit, with
        orbits ordered by their least member; ``rep`` is the least member
        (or the greatest with ``choice="greatest"``).  ``locate[s] = (i, g)``
        with ``g`` the least element sending ``reps[i][0]`` to ``s``.
        """
        if choice not in ("least", "greatest"):
            raise ValueError(f"unknown representative choice {choice!r}")
        key = (n, choice)
        cached = self._orbit_cache.get(key)
        if cached is not None:
            return cached
        seen = set()
        orbits = []
        for s in self.ordered_simplices(n):
            if s in seen:
                continue
            orbit = {self.act_tuple(g, s) for g in range(self.group.order)}
            seen |= orbit
            orbits.append(orbit)
        locate = {}
        reps = []
        for i, orbit in enumerate(orbits):
            rep = min(orbit) if choice == "least" else max(orbit)
            reps.append((rep, self.stabilizer_of_vertices(rep)))
            for g in range(self.group.order):
                t = self.act_tuple(g, rep)
                if t not in locate:
                    locate[t] = (i, g)
        self._orbit_cache[key] = (reps, locate)
        return reps, locate


def validate_gcomplex(group, complex, action, subdivide=False):
    """Build a GComplex and insist on admissibility.

    With ``subdivide=True`` a non-admissible input is barycentrically
    subdivided (at most twice) instead of rejected.
    """
    X = GComplex(group, complex, action)
    witness = X.admissibility_witness()
    if witness is None:
        return X
    if not subdivide:
        g, s = witness
        raise ValidationError(
            "NOT_ADMISSIBLE", f"element {g} fixes simplex {s} setwise but not pointwise", witness=witness
        )
    for rounds in (1, 2):
        X = barycentric_subdivide(X)
        if X.is_admissible:
            X.subdivisions = rounds
            return X
    raise ComputationError("STILL_NOT_ADMISSIBLE_AFTER_2", "subdivision did not repair admissibility")


def barycentric_subdivide(X):
    """Barycentric subdivision with the induced action.

    New vertices are the simplices of X, numbered by (dimension, tuple).
    """
    old = X.complex
    cells = sorted(old.simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(cells)}
    chains = []
    for m in old.maximal_simplices:
        for perm in permutations(m):
            chains.append([index[tuple(sorted(perm[:k]))] for k in range(1, len(m) + 1)])
    if old.names:
        names = ["|".join(old.names[v] for v in s) for s in cells]
    else:
        names = None
    new_complex = SimplicialComplex.from_maximal(chains, vertex_count=len(cells), names=names)
    action = [[index[X.act_simplex(g, s)] for s in cells] for g in range(X.group.order)]
    return GComplex(X.group, new_complex, action)


def fixed_subcomplex(X, H):
    """Simplices fixed pointwise by every element of H (original vertex labels)."""
    if H.parent != X.group:
        raise ValidationError("NOT_SUBGROUP", "H is not a subgroup of the acting group")
    fixed = [s for s in X.complex.simplices if X.fixes(H.elements, s)]
    return SimplicialComplex(fixed, check=False)


def pointwise_stabilizer(X, s):
    return X.stabilizer_of_vertices(s)


def orbit_reps(X, n):
    return X.orbit_index(n)[0]


def transport_witness(X, s, t):
    """Least g with g.t = s entrywise, or None."""
    s, t = tuple(s), tuple(t)
    for g in range(X.group.order):
        if X.act_tuple(g, t) == s:
            return g
    return None


def trivial_action(complex):
    G = trivial_group()
    return GComplex(G, complex, [tuple(range(complex.vertex_count))])

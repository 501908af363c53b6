"""Finite groups given by multiplication tables."""

from functools import cached_property

from .errors import ValidationError


class FiniteGroup:
    """A finite group on the element indices ``0..order-1``.

    ``mul[a][b]`` is the index of the product ``a*b``.
    """

    def __init__(self, mul, name=None, check=True):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        if self.order == 0:
            raise ValidationError("NOT_A_GROUP", "empty multiplication table")
        if any(len(r) != self.order for r in self.mul):
            raise ValidationError("NOT_A_GROUP", "multiplication table is not square")
        self.identity = self._find_identity()
        self.inv = tuple(self._find_inverse(g) for g in range(self.order))
        if check:
            self._check_associative()
        self._hash = hash(self.mul)
        self._subgroups = {}
        self._factors = None

    def _find_identity(self):
        n = self.order
        for e in range(n):
            if all(self.mul[e][g] == g and self.mul[g][e] == g for g in range(n)):
                return e
        raise ValidationError("NOT_A_GROUP", "no two-sided identity")

    def _find_inverse(self, g):
        for h in range(self.order):
            if self.mul[g][h] == self.identity and self.mul[h][g] == self.identity:
                return h
        raise ValidationError("NOT_A_GROUP", f"element {g} has no inverse")

    def _check_associative(self):
        m = self.mul
        r = range(self.order)
        for a in r:
            ma = m[a]
            for b in r:
                ab = ma[b]
                mb = m[b]
                mab = m[ab]
                for c in r:
                    if mab[c] != ma[mb[c]]:
                        raise ValidationError("NOT_A_GROUP", f"not associative at {(a, b, c)}")

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and self._hash == other._hash and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def elements(self):
        return range(self.order)

    def op(self, a, b):
        return self.mul[a][b]

    def conj(self, g, h):
        """``g^{-1} h g``."""
        return self.mul[self.mul[self.inv[g]][h]][g]

    def power(self, g, k):
        out = self.identity
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    @cached_property
    def is_abelian(self):
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    # -- subgroups ---------------------------------------------------------------

    def subgroup(self, elements, check=True):
        """The interned Subgroup with the given element set."""
        key = tuple(sorted(set(elements)))
        sub = self._subgroups.get(key)
        if sub is None:
            if check and not self.is_closed(key):
                raise ValidationError("NOT_SUBGROUP", f"{list(key)} is not a subgroup")
            sub = Subgroup(self, key)
            self._subgroups[key] = sub
        return sub

    def is_closed(self, elements):
        s = set(elements)
        if self.identity not in s:
            return False
        return all(self.mul[a][b] in s for a in s for b in s)

    def generated(self, gens):
        span = {self.identity}
        frontier = list(span)
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return self.subgroup(span, check=False)

    @cached_property
    def trivial_subgroup(self):
        return self.subgroup([self.identity], check=False)

    @cached_property
    def whole(self):
        return self.subgroup(range(self.order), check=False)

    @cached_property
    def all_subgroups(self):
        return tuple(enumerate_subgroups(self))


class Subgroup:
    """A subgroup of ``parent`` stored as a sorted element tuple.

    Obtain instances through ``FiniteGroup.subgroup`` so that equal subgroups
    are the same object.
    """

    __slots__ = ("parent", "elements", "_set", "_hash")

    def __init__(self, parent, elements):
        self.parent = parent
        self.elements = tuple(elements)
        self._set = frozenset(self.elements)
        self._hash = hash(self.elements)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Subgroup)
            and self.elements == other.elements
            and self.parent == other.parent
        )

    def __hash__(self):
        return self._hash

    def __contains__(self, g):
        return g in self._set

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"Subgroup({list(self.elements)})"

    @property
    def order(self):
        return len(self.elements)

    def issubset(self, other):
        return self._set <= other._set

    def conjugate(self, g):
        """``g^{-1} H g``."""
        G = self.parent
        return G.subgroup((G.conj(g, h) for h in self.elements), check=False)

    def image(self, hom):
        return hom.target.subgroup((hom(h) for h in self.elements), check=False)


class GroupHom:
    """A homomorphism, possibly defined only on a subgroup of ``source``.

    ``image`` maps element indices of the domain to element indices of
    ``target``.  When it covers every element of ``source`` the homomorphism is
    total.
    """

    def __init__(self, source, target, image, check=True):
        self.source = source
        self.target = target
        if isinstance(image, dict):
            self.image = dict(image)
        else:
            self.image = dict(enumerate(image))
        if check:
            self._validate()

    def _validate(self):
        G, H = self.source, self.target
        dom = list(self.image)
        if not G.is_closed(dom):
            raise ValidationError("HOM_INVALID", "domain is not a subgroup")
        for g, x in self.image.items():
            if not 0 <= x < H.order:
                raise ValidationError("HOM_INVALID", f"image of {g} is not an element")
        if self.image[G.identity] != H.identity:
            raise ValidationError("HOM_INVALID", "identity not preserved")
        for a in dom:
            for b in dom:
                if self.image[G.mul[a][b]] != H.mul[self.image[a]][self.image[b]]:
                    raise ValidationError("HOM_INVALID", f"not multiplicative at {(a, b)}", witness=(a, b))

    def __call__(self, g):
        return self.image[g]

    @property
    def domain(self):
        return self.source.subgroup(self.image, check=False)

    def restrict(self, sub):
        return GroupHom(self.source, self.target, {k: self.image[k] for k in sub}, check=False)

    def kernel(self):
        e = self.target.identity
        return self.source.subgroup((g for g, x in self.image.items() if x == e), check=False)

    def is_injective_on(self, sub):
        return len({self.image[k] for k in sub}) == len(sub)

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.image == other.image
        )

    def __repr__(self):
        return f"GroupHom({dict(sorted(self.image.items()))})"


# -- constructors -------------------------------------------------------------------


def cyclic_group(n, name=None):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=name or f"Z/{n}", check=False)


def trivial_group():
    return cyclic_group(1, name="1")


def direct_product(G, H, name=None):
    """G x H with ``(g, h)`` stored at index ``g * |H| + h``."""
    m = H.order
    table = [
        [G.mul[a // m][b // m] * m + H.mul[a % m][b % m] for b in range(G.order * m)]
        for a in range(G.order * m)
    ]
    P = FiniteGroup(table, name=name or f"{G.name or G.order}x{H.name or H.order}", check=False)
    P._factors = (G, H)
    return P


def pair_index(P, g, h):
    G, H = P._factors
    return g * H.order + h


def split_index(P, x):
    G, H = P._factors
    return divmod(x, H.order)


def projection(P, which):
    """The projection homomorphism of a direct product onto factor 0 or 1."""
    G, H = P._factors
    m = H.order
    if which == 0:
        return GroupHom(P, G, [x // m for x in range(P.order)], check=False)
    return GroupHom(P, H, [x % m for x in range(P.order)], check=False)


def permutation_group(generators, degree=None, name=None):
    """Closure of the given permutations (tuples of images).

    Element 0 is the identity; remaining elements are ordered by first
    discovery in a breadth-first closure, so the result is deterministic.
    Returns ``(group, perms)`` where ``perms[i]`` is the permutation of
    element ``i``.
    """
    gens = [tuple(p) for p in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for p in gens:
        if sorted(p) != list(range(degree)):
            raise ValidationError("NOT_A_PERMUTATION", f"{list(p)} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    perms = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(p[s[i]] for i in range(degree))  # p after s
                if q not in index:
                    index[q] = len(perms)
                    perms.append(q)
                    nxt.append(q)
        frontier = nxt
    n = len(perms)
    table = [[index[tuple(perms[a][perms[b][i]] for i in range(degree))] for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=name, check=False), perms


# -- subgroup enumeration and cosets ---------------------------------------------------


def enumerate_subgroups(G):
    """All subgroups of G ordered by size, then lexicographically."""
    found = {G.trivial_subgroup.elements: G.trivial_subgroup}
    frontier = [G.trivial_subgroup]
    while frontier:
        nxt = []
        for S in frontier:
            for g in G.elements():
                if g in S:
                    continue
                T = G.generated(S.elements + (g,))
                if T.elements not in found:
                    found[T.elements] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (len(S), S.elements))


def left_cosets(G, H):
    """Partition of G into left cosets gH, identity coset first."""
    if H.parent != G or not G.is_closed(H.elements):
        raise ValidationError("NOT_SUBGROUP", "H is not a subgroup of G")
    seen = set()
    blocks = []
    for g in [G.identity] + [x for x in G.elements() if x != G.identity]:
        if g in seen:
            continue
        block = tuple(sorted(G.mul[g][h] for h in H.elements))
        seen.update(block)
        blocks.append(block)
    return blocks


def graph_subgroup(K, zeta, product):
    """The graph ``{(k, zeta(k))}`` inside ``product`` = G x H."""
    G, H = product._factors
    if zeta.source != G or zeta.target != H:
        raise ValidationError("HOM_INVALID", "zeta does not go from G to H")
    if set(zeta.image) != set(K.elements):
        raise ValidationError("HOM_INVALID", "zeta is not defined exactly on K")
    try:
        zeta._validate()
    except ValidationError as exc:
        raise ValidationError("HOM_INVALID", exc.message, exc.witness) from None
    return product.subgroup((pair_index(product, k, zeta(k)) for k in K.elements), check=False)

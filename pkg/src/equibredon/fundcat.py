"""Finite presentation of the discrete fundamental category on vertex objects.

Objects are pairs (v, H) with H fixing v.  Arrows are generated by

* ``EdgeStep(v, w, H)``: (v, H) -> (w, H) along an edge of the fixed set X^H,
* ``Relabel(v, H, K)``: (v, H) -> (v, K) for H < K <= Stab(v),
* ``Twist(g, v, H)``: (v, H) -> (g^-1 v, g^-1 H g), for g != 1.

The identity element never appears as a twist: ``Twist(1)`` is the identity
arrow itself.  Words are read left to right (first generator first).
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import ComputationError, ValidationError
from .gcomplex import fixed_subcomplex


@dataclass(frozen=True)
class FundObject:
    vertex: int
    subgroup: object

    def sort_key(self):
        return (self.vertex, len(self.subgroup), self.subgroup.elements)

    def __repr__(self):
        return f"({self.vertex}, {list(self.subgroup.elements)})"


@dataclass(frozen=True)
class EdgeStep:
    v: int
    w: int
    subgroup: object

    @property
    def source(self):
        return FundObject(self.v, self.subgroup)

    @property
    def target(self):
        return FundObject(self.w, self.subgroup)

    def sort_key(self):
        return (0, self.v, self.w, len(self.subgroup), self.subgroup.elements)

    def __repr__(self):
        return f"EdgeStep({self.v}->{self.w}; {list(self.subgroup.elements)})"


@dataclass(frozen=True)
class Relabel:
    v: int
    subgroup: object
    larger: object

    @property
    def source(self):
        return FundObject(self.v, self.subgroup)

    @property
    def target(self):
        return FundObject(self.v, self.larger)

    def sort_key(self):
        return (1, self.v, len(self.subgroup), self.subgroup.elements, len(self.larger), self.larger.elements)

    def __repr__(self):
        return f"Relabel({self.v}; {list(self.subgroup.elements)} <= {list(self.larger.elements)})"


@dataclass(frozen=True, eq=True)
class Twist:
    g: int
    v: int
    subgroup: object
    target_vertex: int
    target_subgroup: object

    @property
    def source(self):
        return FundObject(self.v, self.subgroup)

    @property
    def target(self):
        return FundObject(self.target_vertex, self.target_subgroup)

    def sort_key(self):
        return (2, self.v, len(self.subgroup), self.subgroup.elements, self.g)

    def __repr__(self):
        return f"Twist({self.g}; {self.v}, {list(self.subgroup.elements)})"


def make_twist(X, g, v, H):
    """Twist(g) at (v, H); the target is computed, never supplied."""
    G = X.group
    return Twist(g, v, H, X.act(G.inv[g], v), H.conjugate(g))


class ArrowWord:
    __slots__ = ("source", "target", "gens")

    def __init__(self, source, target, gens=()):
        gens = tuple(gens)
        here = source
        for a in gens:
            if a.source != here:
                raise ValidationError("NOT_COMPOSABLE", f"{a} does not start at {here}")
            here = a.target
        if here != target:
            raise ValidationError("NOT_COMPOSABLE", f"word ends at {here}, not {target}")
        self.source = source
        self.target = target
        self.gens = gens

    @classmethod
    def identity(cls, obj):
        return cls(obj, obj, ())

    @classmethod
    def of(cls, *gens):
        return cls(gens[0].source, gens[-1].target, gens)

    def __eq__(self, other):
        return isinstance(other, ArrowWord) and (self.source, self.target, self.gens) == (
            other.source,
            other.target,
            other.gens,
        )

    def __hash__(self):
        return hash((self.source, self.target, self.gens))

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        inner = " . ".join(map(repr, self.gens)) or "id"
        return f"[{inner}]"


def compose_words(a, b):
    if a.target != b.source:
        raise ValidationError("NOT_COMPOSABLE", f"{a} ends at {a.target}, {b} starts at {b.source}")
    return ArrowWord(a.source, b.target, a.gens + b.gens)


class FundPresentation:
    def __init__(self, X, objects, generators, relations):
        self.X = X
        self.objects = objects
        self.generators = generators
        self.relations = relations
        self._object_set = frozenset(objects)

    def has_object(self, o):
        return o in self._object_set

    @cached_property
    def generators_from(self):
        out = {}
        for a in self.generators:
            out.setdefault(a.source, []).append(a)
        return out

    def twist(self, g, v, H):
        return make_twist(self.X, g, v, H)

    def twist_word(self, g, v, H):
        """Twist(g) at (v, H) as a word; empty when g is the identity."""
        t = make_twist(self.X, g, v, H)
        if g == self.X.group.identity:
            return ArrowWord.identity(t.source)
        return ArrowWord.of(t)

    def relabel_word(self, v, H, K):
        if H == K:
            return ArrowWord.identity(FundObject(v, H))
        return ArrowWord.of(Relabel(v, H, K))

    def relation_counts(self):
        counts = {}
        for name, _, _ in self.relations:
            counts[name] = counts.get(name, 0) + 1
        return dict(sorted(counts.items()))

    def dump(self):
        """Plain-text report of objects, generators and relation counts."""
        X = self.X
        name = X.complex.name
        lines = [f"objects: {len(self.objects)}"]
        for o in self.objects:
            lines.append(f"  ({name(o.vertex)}, {list(o.subgroup.elements)})")
        kinds = {"EdgeStep": 0, "Relabel": 0, "Twist": 0}
        for a in self.generators:
            kinds[type(a).__name__] += 1
        lines.append(f"generators: {len(self.generators)} " + " ".join(f"{k}={v}" for k, v in kinds.items()))
        for a in self.generators:
            lines.append("  " + describe_generator(a, name))
        lines.append(f"relations: {len(self.relations)} " + " ".join(f"{k}={v}" for k, v in self.relation_counts().items()))
        return "\n".join(lines) + "\n"


def describe_generator(a, name=str):
    if isinstance(a, EdgeStep):
        return f"EdgeStep({name(a.v)}->{name(a.w)}; {list(a.subgroup.elements)})"
    if isinstance(a, Relabel):
        return f"Relabel({name(a.v)}; {list(a.subgroup.elements)} <= {list(a.larger.elements)})"
    return f"Twist(g={a.g}; {name(a.v)}, {list(a.subgroup.elements)})"


def build_presentation(X):
    if not X.is_admissible:
        g, s = X.admissibility_witness()
        raise ValidationError("NOT_ADMISSIBLE", f"element {g} fixes {s} setwise only", witness=(g, s))
    G = X.group
    subgroups = G.all_subgroups
    stab = {v: X.vertex_stabilizer(v) for v in X.complex.vertices}
    objects = []
    for v in X.complex.vertices:
        for H in subgroups:
            if H.issubset(stab[v]):
                objects.append(FundObject(v, H))

    fixed = {H: fixed_subcomplex(X, H) for H in subgroups}
    edge_gens = []
    for H in subgroups:
        for a, b in fixed[H].simplices_of_dim(1) if fixed[H].dim >= 1 else []:
            edge_gens.append(EdgeStep(a, b, H))
            edge_gens.append(EdgeStep(b, a, H))
    relabels = []
    for v in X.complex.vertices:
        below = [H for H in subgroups if H.issubset(stab[v])]
        for H in below:
            for K in below:
                if H != K and H.issubset(K):
                    relabels.append(Relabel(v, H, K))
    twists = []
    for o in objects:
        for g in G.elements():
            if g != G.identity:
                twists.append(make_twist(X, g, o.vertex, o.subgroup))
    generators = sorted(edge_gens + relabels + twists, key=lambda a: a.sort_key())

    def word(*gens):
        gens = [x for x in gens if x is not None]
        return ArrowWord.of(*gens)

    def tw(g, v, H):
        return None if g == G.identity else make_twist(X, g, v, H)

    def rl(v, H, K):
        return None if H == K else Relabel(v, H, K)

    def w_or_id(obj, *gens):
        gens = [x for x in gens if x is not None]
        return ArrowWord.of(*gens) if gens else ArrowWord.identity(obj)

    relations = []
    # R1 triangles and R2 inverses in every fixed subcomplex
    for H in subgroups:
        F = fixed[H]
        for tri in F.simplices_of_dim(2) if F.dim >= 2 else []:
            for u in tri:
                for v in tri:
                    for w in tri:
                        if len({u, v, w}) == 3:
                            relations.append(
                                ("R1", word(EdgeStep(u, v, H), EdgeStep(v, w, H)), word(EdgeStep(u, w, H)))
                            )
    for e in edge_gens:
        relations.append(
            ("R2", word(e, EdgeStep(e.w, e.v, e.subgroup)), ArrowWord.identity(e.source))
        )
    # R3 multiplicativity
    for o in objects:
        v, H = o.vertex, o.subgroup
        for g in G.elements():
            if g == G.identity:
                continue
            t1 = make_twist(X, g, v, H)
            for g2 in G.elements():
                if g2 == G.identity:
                    continue
                t2 = make_twist(X, g2, t1.target_vertex, t1.target_subgroup)
                relations.append(("R3", word(t1, t2), w_or_id(o, tw(G.mul[g][g2], v, H))))
    # R4 exchange of twists and edges
    for e in edge_gens:
        H = e.subgroup
        for g in G.elements():
            if g == G.identity:
                continue
            gi = G.inv[g]
            lhs = word(e, make_twist(X, g, e.w, H))
            rhs = word(make_twist(X, g, e.v, H), EdgeStep(X.act(gi, e.v), X.act(gi, e.w), H.conjugate(g)))
            relations.append(("R4", lhs, rhs))
    # R5 naturality and transitivity of relabelling
    for r in relabels:
        v, H, K = r.v, r.subgroup, r.larger
        for b in X.complex.neighbors[v]:
            if X.fixes(K.elements, (b,)):
                relations.append(("R5", word(r, EdgeStep(v, b, K)), word(EdgeStep(v, b, H), Relabel(b, H, K))))
        for g in G.elements():
            if g == G.identity:
                continue
            gi = G.inv[g]
            lhs = word(r, make_twist(X, g, v, K))
            rhs = word(make_twist(X, g, v, H), Relabel(X.act(gi, v), H.conjugate(g), K.conjugate(g)))
            relations.append(("R5", lhs, rhs))
        for L in subgroups:
            if L != K and K.issubset(L) and L.issubset(stab[v]):
                relations.append(("R5", word(r, Relabel(v, K, L)), word(Relabel(v, H, L))))
    # R6 inner twists are identities
    for o in objects:
        for h in o.subgroup:
            if h != G.identity:
                relations.append(("R6", word(make_twist(X, h, o.vertex, o.subgroup)), ArrowWord.identity(o)))
    return FundPresentation(X, objects, generators, relations)


# -- arrow normal forms ------------------------------------------------------------


def arrow_data(X, w):
    """Reduce a word to ``(g, path)``: the arrow [g, p] it realizes.

    ``path`` is the vertex sequence of the edge path in X^H (H the source
    subgroup) from the source vertex to ``g`` applied to the target vertex.
    """
    G = X.group
    g = G.identity
    path = [w.source.vertex]
    for a in w.gens:
        if isinstance(a, EdgeStep):
            path.append(X.act(g, a.w))
        elif isinstance(a, Twist):
            g = G.mul[g][a.g]
    return g, path


def _reduce_loop(X, H, loop):
    """Greedy contraction of a closed edge path inside X^H.

    Cancels backtracks and shortcuts across 2-simplices of the fixed set.
    Sound (never contracts an essential loop) but not complete in general.
    """
    Hs = H.elements
    path = list(loop)
    changed = True
    while changed and len(path) > 1:
        changed = False
        out = []
        for v in path:
            if out and out[-1] == v:
                continue
            if len(out) >= 2 and out[-2] == v:
                out.pop()
                changed = True
                continue
            if len(out) >= 2:
                tri = (out[-2], out[-1], v)
                if X.complex.is_simplex(tri) and X.fixes(Hs, tri):
                    out.pop()
                    changed = True
            out.append(v)
        path = out
    return path


def words_equal(X, w1, w2):
    """Decide equality of two parallel words as arrows (sound semi-decision)."""
    if w1.source != w2.source or w1.target != w2.target:
        return False
    G = X.group
    g1, p1 = arrow_data(X, w1)
    g2, p2 = arrow_data(X, w2)
    if G.mul[G.inv[g1]][g2] not in w1.target.subgroup:
        return False
    loop = p1 + p2[::-1][1:]
    return len(_reduce_loop(X, w1.source.subgroup, loop)) == 1


def factor_arrow(X, H, g, path, K):
    """Word EdgeSteps(path at H) . Twist(g) . Relabel(g^-1 H g <= K).

    ``path`` runs in X^H from the source vertex to g applied to the target
    vertex.
    """
    G = X.group
    v0 = path[0]
    gens = [EdgeStep(a, b, H) for a, b in zip(path, path[1:])]
    end = path[-1]
    if g != G.identity:
        gens.append(make_twist(X, g, end, H))
    Hc = H.conjugate(g)
    y = X.act(G.inv[g], end)
    if Hc != K:
        gens.append(Relabel(y, Hc, K))
    return ArrowWord(FundObject(v0, H), FundObject(y, K), gens)


# -- induced functors ----------------------------------------------------------------


class InducedFunctor:
    """The functor on presentations induced by an equivariant functor."""

    def __init__(self, phi, source, target, check=True):
        self.phi = phi
        self.source = source
        self.target = target
        self._gen_cache = {}
        if check:
            self._check_relations()

    def object(self, o):
        phi = self.phi
        return FundObject(phi.vertex_map[o.vertex], o.subgroup.image(phi.group_hom))

    def generator(self, a):
        w = self._gen_cache.get(a)
        if w is not None:
            return w
        phi = self.phi
        f, hom = phi.vertex_map, phi.group_hom
        Y = self.target.X
        if isinstance(a, EdgeStep):
            H = a.subgroup.image(hom)
            if f[a.v] == f[a.w]:
                w = ArrowWord.identity(FundObject(f[a.v], H))
            else:
                w = ArrowWord.of(EdgeStep(f[a.v], f[a.w], H))
        elif isinstance(a, Relabel):
            H, K = a.subgroup.image(hom), a.larger.image(hom)
            src = FundObject(f[a.v], H)
            w = ArrowWord.identity(src) if H == K else ArrowWord.of(Relabel(f[a.v], H, K))
        else:
            g = hom(a.g)
            H = a.subgroup.image(hom)
            if g == Y.group.identity:
                w = ArrowWord.identity(FundObject(f[a.v], H))
            else:
                w = ArrowWord.of(make_twist(Y, g, f[a.v], H))
        if w.source != self.object(a.source) or w.target != self.object(a.target):
            raise ValidationError("NOT_EQUIVARIANT", f"image of {a} has wrong endpoints")
        self._gen_cache[a] = w
        return w

    def word(self, w):
        out = ArrowWord.identity(self.object(w.source))
        for a in w.gens:
            out = compose_words(out, self.generator(a))
        return out

    def _check_relations(self):
        for o in self.source.objects:
            if not self.target.has_object(self.object(o)):
                raise ValidationError("NOT_EQUIVARIANT", f"object {o} maps outside the target")
        Y = self.target.X
        for name, w1, w2 in self.source.relations:
            if not words_equal(Y, self.word(w1), self.word(w2)):

                raise ComputationError("RELATION_BROKEN", f"{name} instance {w1} = {w2} is not preserved")


def induced_functor(phi, source=None, target=None, check=True):
    source = source or build_presentation(phi.source)
    target = target or build_presentation(phi.target)
    return InducedFunctor(phi, source, target, check=check)

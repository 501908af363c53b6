"""Coefficient systems on the fundamental presentation, pullback and pushforward.

A coefficient system assigns a presented abelian group to every object and,
contravariantly, a homomorphism value(target) -> value(source) to every
generating arrow.  Relations are checked exhaustively on construction.
"""

from dataclasses import dataclass
from math import lcm

from .abelian import AbHom, FGAbelianGroup
from .errors import ValidationError
from .fundcat import (
    ArrowWord,
    EdgeStep,
    FundObject,
    Relabel,
    Twist,
    build_presentation,
    induced_functor,
    make_twist,
)
from .groups import GroupHom, graph_subgroup, pair_index
from .intmat import IntMatrix
from .morita import legs_as_functors

ZERO = FGAbelianGroup.zero()
INTEGERS = FGAbelianGroup.free(1)


class CoefficientSystem:
    """Validated contravariant functor from a presentation to abelian groups.

    Objects missing from ``values`` get the zero group.  A missing generator
    action defaults to the zero map when either end is zero, and to the
    identity when both ends carry the same presentation; anything else is a
    TYPE_MISMATCH.
    """

    def __init__(self, presentation, values, actions=None, check=True):
        self.presentation = presentation
        actions = dict(actions or {})
        self.values = {}
        for o in presentation.objects:
            self.values[o] = values.get(o, ZERO)
        extra = [o for o in values if not presentation.has_object(o)]
        if extra:
            raise ValidationError("TYPE_MISMATCH", f"value given at non-object {extra[0]}")
        self.actions = {}
        for a in presentation.generators:
            src, tgt = self.values[a.target], self.values[a.source]
            f = actions.get(a)
            if f is None:
                if src.generator_count == 0 or tgt.generator_count == 0:
                    f = AbHom.zero(src, tgt)
                elif src.same_presentation(tgt):
                    f = AbHom.identity(src)
                else:
                    raise ValidationError("TYPE_MISMATCH", f"no action given for {a}")
            self.actions[a] = f
        if check:
            self.validate()

    def value(self, o):
        try:
            return self.values[o]
        except KeyError:
            raise ValidationError("TYPE_MISMATCH", f"{o} is not an object") from None

    def action(self, a):
        return self.actions[a]

    def validate(self):
        for a, f in self.actions.items():
            if not f.source.same_presentation(self.values[a.target]) or not f.target.same_presentation(
                self.values[a.source]
            ):
                raise ValidationError("TYPE_MISMATCH", f"action of {a} has the wrong source or target", witness=a)
            if isinstance(a, Twist) and a.g in a.subgroup and not f.equals(AbHom.identity(f.source)):
                raise ValidationError("RELATION_VIOLATED", f"inner twist {a} must act as the identity", witness=a)
        for name, w1, w2 in self.presentation.relations:
            if not evaluate(self, w1).equals(evaluate(self, w2)):
                raise ValidationError(
                    "RELATION_VIOLATED", f"{name}: {w1} = {w2} fails", witness=(name, w1, w2)
                )
        return self

    def nonzero_objects(self):
        return [o for o in self.presentation.objects if self.values[o].generator_count]


def evaluate(A, w):
    """A(w): value(w.target) -> value(w.source), composed in reverse order."""
    src = A.value(w.target)
    tgt = A.value(w.source)
    if not w.gens:
        return AbHom.identity(tgt)
    if src.generator_count == 0 or tgt.generator_count == 0:
        return AbHom.zero(src, tgt)
    m = None
    for a in w.gens:
        f = A.actions.get(a)
        if f is None:
            raise ValidationError("NOT_COMPOSABLE", f"{a} is not a generator of the presentation")
        m = f.matrix if m is None else m @ f.matrix
    return AbHom(src, tgt, m, check=False)


# -- shorthands -----------------------------------------------------------------------


def constant_system(P, group=INTEGERS):
    return CoefficientSystem(P, {o: group for o in P.objects})


def orbit_system(P, obj, group=INTEGERS):
    """Supported on the twist orbit of ``obj``; transports inside are identities."""
    X = P.X
    support = set()
    for g in X.group.elements():
        t = make_twist(X, g, obj.vertex, obj.subgroup)
        support.add(t.target)
    return CoefficientSystem(P, {o: group for o in support})


def explicit_system(P, values, actions):
    return CoefficientSystem(P, values, actions)


def pull_system(P, object_map, word_map, A, check=True):
    """The composite A o F for F given by object and generator maps."""
    values = {o: A.value(object_map(o)) for o in P.objects}
    actions = {a: evaluate(A, word_map(a)) for a in P.generators}
    return CoefficientSystem(P, values, actions, check=check)


def pullback(F, A, check=True):
    """F*A along an induced functor F."""
    return pull_system(F.source, F.object, F.generator, A, check=check)


# -- representation ring system ------------------------------------------------------------


def characters(G, K):
    """Characters of an abelian subgroup K as tuples of values in Z/e.

    ``e`` is the exponent of G; entries follow ``K.elements``.  The trivial
    character comes first, the rest in lexicographic order.
    """
    e = lcm(*(G.element_order(g) for g in G.elements()))
    gens = []
    span = G.trivial_subgroup
    for k in K.elements:
        if k not in span:
            gens.append(k)
            span = G.generated(span.elements + (k,))
    out = set()

    def assign(i, images):
        if i == len(gens):
            chi = {G.identity: 0}
            frontier = [G.identity]
            ok = True
            while frontier and ok:
                nxt = []
                for x in frontier:
                    for g, val in zip(gens, images):
                        y = G.mul[x][g]
                        v = (chi[x] + val) % e
                        if y in chi:
                            if chi[y] != v:
                                ok = False
                                break
                        else:
                            chi[y] = v
                            nxt.append(y)
                    if not ok:
                        break
                frontier = nxt
            if ok:
                out.add(tuple(chi[k] for k in K.elements))
            return
        step = e // G.element_order(gens[i])
        for val in range(0, e, step):
            assign(i + 1, images + [val])

    assign(0, [])
    return sorted(out)


def build_rep_system(P):
    """Free abelian group on characters at each object, restriction along Relabel."""
    X = P.X
    G = X.group
    if not G.is_abelian:
        raise ValidationError("NONABELIAN_UNSUPPORTED", "representation system needs an abelian group")
    chars = {H: characters(G, H) for H in G.all_subgroups}
    values = {o: FGAbelianGroup.free(len(chars[o.subgroup])) for o in P.objects}
    actions = {}
    for a in P.generators:
        if isinstance(a, Relabel):
            H, K = a.subgroup, a.larger
            hpos = [K.elements.index(h) for h in H.elements]
            index = {c: i for i, c in enumerate(chars[H])}
            rows = len(chars[H])
            data = [[0] * len(chars[K]) for _ in range(rows)]
            for j, chi in enumerate(chars[K]):
                data[index[tuple(chi[p] for p in hpos)]][j] = 1
            actions[a] = AbHom(values[a.target], values[a.source], IntMatrix(rows, len(chars[K]), data))
    return CoefficientSystem(P, values, actions)


# -- bundles: Gamma, lifting, right inverse --------------------------------------------------


@dataclass(frozen=True)
class GammaData:
    z: int
    K: object
    zeta: GroupHom
    gamma: object


def compute_gamma(B, z, K):
    """The graph of k -> h where (k, h) fixes z; K must fix lambda(z)."""
    Z, G, H = B.total, B.G, B.H
    P = Z.group
    x = B.lam[z]
    if not B.left.fixes(K.elements, (x,)):
        raise ValidationError("FIBER_NOT_TORSOR", f"K does not fix the base vertex {x}")
    image = {}
    for k in K.elements:
        hs = [h for h in H.elements() if Z.act(pair_index(P, k, h), z) == z]
        if len(hs) != 1:
            raise ValidationError(
                "FIBER_NOT_TORSOR", f"{len(hs)} fiber corrections for element {k} at vertex {z}", witness=(k, z)
            )
        image[k] = hs[0]
    try:
        zeta = GroupHom(G, H, image)
    except ValidationError as exc:
        raise ValidationError("ZETA_NOT_HOM", exc.message, exc.witness) from None
    return GammaData(z, K, zeta, graph_subgroup(K, zeta, P))


def lift_edge_path(B, path, z, K=None):
    """Unique lift of a base edge path starting at total-space vertex z."""
    Z = B.total
    if not path:
        return [z]
    if B.lam[z] != path[0]:
        raise ValidationError("NO_LIFT", f"vertex {z} does not lie over {path[0]}")
    out = [z]
    for y in path[1:]:
        here = out[-1]
        cands = [w for w in Z.complex.neighbors[here] if B.lam[w] == y]
        if len(cands) != 1:
            raise ValidationError("NO_LIFT", f"{len(cands)} lifts of the step to {y} at {here}", witness=(here, y))
        out.append(cands[0])
    if K is not None:
        gamma = compute_gamma(B, z, K).gamma
        for a, b in zip(out, out[1:]):
            if not Z.fixes(gamma.elements, (a, b)):
                raise ValidationError("NO_LIFT", f"lifted edge {(a, b)} leaves the fixed set")
    return out


def lex_section(B):
    return {x: B.fiber(x)[0] for x in B.left.complex.vertices}


def offset_section(B, k):
    """Pick the k-th vertex (cyclically) of each sorted fiber; k=0 is lexicographic."""
    out = {}
    for x in B.left.complex.vertices:
        fib = B.fiber(x)
        if not fib:
            raise ValidationError("FIBER_NOT_TORSOR", f"empty fiber over {x}")
        out[x] = fib[k % len(fib)]
    return out


def _fiber_shift(B, z_from, z_to, g=None):
    """The unique h with (g, h).z_from = z_to (g defaults to the identity)."""
    Z, P = B.total, B.total.group
    g = B.G.identity if g is None else g
    hs = [h for h in B.H.elements() if Z.act(pair_index(P, g, h), z_from) == z_to]
    if len(hs) != 1:
        raise ValidationError("FIBER_NOT_TORSOR", f"{len(hs)} fiber corrections from {z_from} to {z_to}")
    return hs[0]


class SigmaFunctor:
    """Right inverse of the functor induced by lambda, built from a section."""

    def __init__(self, B, base, total, section=None):
        self.B = B
        self.base = base
        self.total = total
        self.section = dict(section or lex_section(B))
        self._gammas = {}
        self._gen_cache = {}
        for x, z in self.section.items():
            if B.lam[z] != x:
                raise ValidationError("FIBER_NOT_TORSOR", f"section value {z} is not over {x}")

    def gamma(self, z, K):
        key = (z, K)
        g = self._gammas.get(key)
        if g is None:
            g = compute_gamma(self.B, z, K).gamma
            self._gammas[key] = g
        return g

    def object(self, o):
        z = self.section[o.vertex]
        return FundObject(z, self.gamma(z, o.subgroup))

    def generator(self, a):
        w = self._gen_cache.get(a)
        if w is not None:
            return w
        B, Z = self.B, self.B.total
        P = Z.group
        src = self.object(a.source)
        tgt = self.object(a.target)
        if isinstance(a, EdgeStep):
            z = src.vertex
            lifted = lift_edge_path(B, [a.v, a.w], z)[1]
            gens = [EdgeStep(z, lifted, src.subgroup)]
            h = _fiber_shift(B, tgt.vertex, lifted)
            if h != B.H.identity:
                gens.append(make_twist(Z, pair_index(P, B.G.identity, h), lifted, src.subgroup))
        elif isinstance(a, Twist):
            # (g, h) . z_{g^-1 x} = z_x
            h = _fiber_shift(B, tgt.vertex, src.vertex, g=a.g)
            gens = [make_twist(Z, pair_index(P, a.g, h), src.vertex, src.subgroup)]
        else:
            gens = [Relabel(src.vertex, src.subgroup, tgt.subgroup)]
        w = ArrowWord(src, tgt, gens)
        self._gen_cache[a] = w
        return w

    def check_right_inverse(self, lam_functor):
        for o in self.base.objects:
            if lam_functor.object(self.object(o)) != o:
                raise ValidationError("RIGHT_INVERSE_BROKEN", f"object {o} is not recovered")
        for a in self.base.generators:
            if lam_functor.word(self.generator(a)) != ArrowWord.of(a):
                raise ValidationError("RIGHT_INVERSE_BROKEN", f"generator {a} is not recovered")


def sigma_right_inverse(B, base=None, total=None, section=None, check=True):

    base = base or build_presentation(B.left)
    total = total or build_presentation(B.total)
    sigma = SigmaFunctor(B, base, total, section)
    if check:
        lam, _ = legs_as_functors(B)
        sigma.check_right_inverse(induced_functor(lam, total, base, check=False))
    return sigma


def pushforward(B, A, section=None, base=None, sigma=None):
    """lambda_* A: the pullback of A along the right inverse."""
    if sigma is None:
        sigma = sigma_right_inverse(B, base=base, total=A.presentation, section=section)
    return pull_system(sigma.base, sigma.object, sigma.generator, A)


# -- natural transformations ---------------------------------------------------------------


class NaturalTransformation:
    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = components

    def component(self, o):
        return self.components[o]


def naturality_failure(S, T, components):
    """A description of the first failing check, or None."""
    P = S.presentation
    if T.presentation is not P and T.presentation.objects != P.objects:
        return "systems live on different presentations"
    for o in P.objects:
        c = components.get(o)
        if c is None:
            return f"no component at {o}"
        if not c.source.same_presentation(S.value(o)) or not c.target.same_presentation(T.value(o)):
            return f"component at {o} has the wrong type"
        if not c.is_isomorphism():
            return f"component at {o} is not invertible"
    for a in P.generators:
        lhs = T.action(a).compose(components[a.target])
        rhs = components[a.source].compose(S.action(a))
        if not lhs.equals(rhs):
            return f"naturality square fails at {a}"
    return None


def check_natural_iso(S, T, components=None):
    """Verified natural isomorphism S => T, or None.

    Without candidate components the identity is tried wherever the two
    systems share a presentation.
    """
    if components is None:
        components = {}
        for o in S.presentation.objects:
            a, b = S.value(o), T.value(o)
            if not a.same_presentation(b):
                return None
            components[o] = AbHom.identity(a)
    if naturality_failure(S, T, components) is not None:
        return None
    return NaturalTransformation(S, T, components)


def unit_components(B, A, sigma, pulled):
    """Components lambda^* lambda_* A => A from the fiber-correcting twists.

    At (z, L) with z' the section value over lambda(z) and z' = (1, b).z, the
    component is A(Twist((1, b^-1)) at (z, L)).
    """
    Z, P = B.total, B.total.group
    comps = {}
    for o in A.presentation.objects:
        z = o.vertex
        zs = sigma.section[B.lam[z]]
        b = _fiber_shift(B, z, zs)
        if b == B.H.identity:
            word = ArrowWord.identity(o)
        else:
            word = ArrowWord.of(make_twist(Z, pair_index(P, B.G.identity, B.H.inv[b]), z, o.subgroup))
        f = evaluate(A, word)
        if not f.source.same_presentation(pulled.value(o)):
            raise ValidationError("TYPE_MISMATCH", f"unit component at {o} does not match")
        comps[o] = f
    return comps


def section_change_components(B, A, sigma, sigma2):
    """Components sigma^* A => sigma2^* A from the twists (1, b)."""
    Z, P = B.total, B.total.group
    comps = {}
    for o in sigma.base.objects:
        z = sigma.section[o.vertex]
        z2 = sigma2.section[o.vertex]
        b = _fiber_shift(B, z, z2)
        src = sigma2.object(o)
        if b == B.H.identity:
            word = ArrowWord.identity(src)
        else:
            word = ArrowWord.of(make_twist(Z, pair_index(P, B.G.identity, b), z2, src.subgroup))
        if word.target != sigma.object(o):
            raise ValidationError("TYPE_MISMATCH", f"section change at {o} lands at {word.target}")
        comps[o] = evaluate(A, word)
    return comps

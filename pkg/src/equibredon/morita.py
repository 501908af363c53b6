"""Equivariant functors, bibundles and biprincipality certification."""

from dataclasses import dataclass, field

from .errors import ValidationError
from .gcomplex import GComplex, SimplicialComplex
from .groups import direct_product, pair_index, projection, split_index


class EquivariantFunctor:
    """A group homomorphism together with an equivariant simplicial vertex map."""

    def __init__(self, source, target, group_hom, vertex_map):
        self.source = source
        self.target = target
        self.group_hom = group_hom
        self.vertex_map = tuple(vertex_map)
        self._check()

    def _check(self):
        X, Y, hom, f = self.source, self.target, self.group_hom, self.vertex_map
        if hom.source != X.group or hom.target != Y.group:
            raise ValidationError("NOT_EQUIVARIANT", "group homomorphism does not match the two groups")
        if len(f) != X.vertex_count or any(not 0 <= y < Y.vertex_count for y in f):
            raise ValidationError("NOT_SIMPLICIAL", "vertex map has the wrong size or range")
        for s in X.complex.simplices:
            if not Y.complex.is_simplex([f[v] for v in s]):
                raise ValidationError("NOT_SIMPLICIAL", f"simplex {s} does not map to a simplex", witness=s)
        for g in X.group.elements():
            hg = hom(g)
            for v in X.complex.vertices:
                if f[X.act(g, v)] != Y.act(hg, f[v]):
                    raise ValidationError(
                        "NOT_EQUIVARIANT", f"phi(g.v) != phi~(g).phi(v) for g={g}, v={v}", witness=(g, v)
                    )

    def apply_tuple(self, t):
        return tuple(self.vertex_map[v] for v in t)


class Bibundle:
    """Total space over G x H with anchors to a G-complex and an H-complex.

    The product group must come from ``direct_product(G, H)``; the H-part acts
    on the left through the convention (g, h).z = g z h^-1.
    """

    def __init__(self, left, right, total, lam, rho):
        self.left = left
        self.right = right
        self.total = total
        self.lam = tuple(lam)
        self.rho = tuple(rho)
        P = total.group
        if getattr(P, "_factors", None) is None or P._factors[0] != left.group or P._factors[1] != right.group:
            raise ValidationError("TYPE_MISMATCH", "total group must be the product of the two groups")
        self.G, self.H = P._factors
        self._check_structure()

    def g_part(self, g):
        return pair_index(self.total.group, g, self.H.identity)

    def h_part(self, h):
        return pair_index(self.total.group, self.G.identity, h)

    def _check_structure(self):
        Z, X, Y = self.total, self.left, self.right
        for name, anchor, base in (("lambda", self.lam, X), ("rho", self.rho, Y)):
            if len(anchor) != Z.vertex_count or any(not 0 <= a < base.vertex_count for a in anchor):
                raise ValidationError("NOT_SIMPLICIAL", f"{name} has the wrong size or range")
            for s in Z.complex.simplices:
                if not base.complex.is_simplex([anchor[v] for v in s]):
                    raise ValidationError("NOT_SIMPLICIAL", f"{name} sends {s} outside the complex", witness=s)
        for x in Z.group.elements():
            g, h = split_index(Z.group, x)
            for z in Z.complex.vertices:
                zz = Z.act(x, z)
                if self.lam[zz] != X.act(g, self.lam[z]):
                    raise ValidationError("NOT_EQUIVARIANT", f"lambda fails at element {x}, vertex {z}", witness=(x, z))
                if self.rho[zz] != Y.act(h, self.rho[z]):
                    raise ValidationError("NOT_EQUIVARIANT", f"rho fails at element {x}, vertex {z}", witness=(x, z))

    def fiber(self, x):
        """Vertices of the total space over base vertex x, in increasing order."""
        return tuple(z for z in self.total.complex.vertices if self.lam[z] == x)


def bibundle_from_functor(phi):
    """The bibundle of an equivariant functor: pairs (x, h), two commuting actions."""
    X, Y, hom = phi.source, phi.target, phi.group_hom
    G, H = X.group, Y.group
    P = direct_product(G, H)
    n, m = X.vertex_count, H.order
    idx = lambda x, h: x * m + h
    simplices = []
    for s in X.complex.simplices:
        for h in range(m):
            simplices.append(tuple(idx(x, h) for x in s))
    names = None
    if X.complex.names:
        names = [f"{X.complex.names[x]}@{h}" for x in range(n) for h in range(m)]
    complex_ = SimplicialComplex(simplices, names=names, check=False)
    action = []
    for a in range(P.order):
        g, k = split_index(P, a)
        perm = []
        for x in range(n):
            for h in range(m):
                # g.(x, h) = (gx, phi~(g) h);  k.(x, h) = (x, h k^-1)
                perm.append(idx(X.act(g, x), H.mul[H.mul[hom(g)][h]][H.inv[k]]))
        action.append(perm)
    total = GComplex(P, complex_, action)
    lam = [x for x in range(n) for h in range(m)]
    rho = [Y.act(H.inv[h], phi.vertex_map[x]) for x in range(n) for h in range(m)]
    return Bibundle(X, Y, total, lam, rho)


@dataclass
class BiprincipalReport:
    passed: bool
    failures: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def summary(self):
        if self.passed:
            return "PASS: biprincipal"
        return "FAIL: " + self.failures[0]


def _principal_failures(B, part, anchor, base, label, other_label):
    """Check one leg: the ``part`` action is free, fibers are orbits, quotient is iso."""
    Z = B.total
    P = Z.group
    elems = [x for x in P.elements() if x != P.identity and x in part]
    names = Z.complex.name
    fmt = lambda cx, s: "[" + ", ".join(cx.name(v) for v in s) + "]"
    failures = []
    for z in Z.complex.vertices:
        for x in elems:
            if Z.act(x, z) == z:
                failures.append(f"{label}-action not free at vertex {names(z)}")
                break
        if failures:
            return failures
    for s in sorted(Z.complex.simplices):
        for x in elems:
            if Z.act_simplex(x, s) == s:
                return [f"{label}-action not free on simplex {fmt(Z.complex, s)}"]
    orbit_of = {}
    for z in Z.complex.vertices:
        orbit_of[z] = frozenset(Z.act(x, z) for x in part)
    for y in base.complex.vertices:
        fiber = frozenset(z for z in Z.complex.vertices if anchor[z] == y)
        if not fiber:
            return [f"{other_label} leg not surjective: empty fiber over vertex {base.complex.name(y)}"]
        z0 = min(fiber)
        if orbit_of[z0] != fiber:
            return [f"fiber over vertex {base.complex.name(y)} is not a single {label}-orbit"]
    # the quotient map Z/part -> base must be a simplicial isomorphism
    for s in Z.complex.simplices:
        img = {anchor[v] for v in s}
        if len(img) != len(s):
            return [f"{other_label} collapses simplex {fmt(Z.complex, s)}"]
    image_orbits = {}
    for s in Z.complex.simplices:
        img = tuple(sorted(anchor[v] for v in s))
        orbit = frozenset(Z.act_simplex(x, s) for x in part)
        image_orbits.setdefault(img, set()).add(orbit)
    for t in base.complex.simplices:
        orbits = image_orbits.get(t)
        if not orbits:
            return [f"simplex {fmt(base.complex, t)} has no preimage under {other_label}"]
        if len(orbits) > 1:
            return [f"simplex {fmt(base.complex, t)} has several {label}-orbits of preimages"]
    return []


def check_biprincipal(B):
    """Certify both legs as principal bundles; failures carry witnesses."""
    P = B.total.group
    g_part = P.subgroup((B.g_part(g) for g in B.G.elements()), check=False)
    h_part = P.subgroup((B.h_part(h) for h in B.H.elements()), check=False)
    report = BiprincipalReport(True)
    fails_h = _principal_failures(B, h_part, B.lam, B.left, "H", "lambda")
    report.checks.append(("lambda is a principal H-bundle", not fails_h))
    fails_g = _principal_failures(B, g_part, B.rho, B.right, "G", "rho")
    report.checks.append(("rho is a principal G-bundle", not fails_g))
    report.checks.append(("anchors equivariant and invariant", True))
    report.failures = fails_g + fails_h
    report.passed = not report.failures
    return report


def legs_as_functors(B):
    lam = EquivariantFunctor(B.total, B.left, projection(B.total.group, 0), B.lam)
    rho = EquivariantFunctor(B.total, B.right, projection(B.total.group, 1), B.rho)
    return lam, rho

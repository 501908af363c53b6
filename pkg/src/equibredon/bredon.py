"""Twisted Bredon-Illman cochain complexes and their cohomology.

Degree-n cochains are stored on orbit representatives of ordered n-simplices,
each with its full pointwise stabilizer K; the value group there is
A(first vertex, K).  Values on other (simplex, subgroup) pairs are derived
through the Twist . Relabel transport word.
"""

import hashlib
from dataclasses import dataclass, field

from .abelian import AbHom, FGAbelianGroup, cohomology_at, direct_sum, induced_map, subquotient
from .coeff import (
    check_natural_iso,
    constant_system,
    evaluate,
    pullback,
    pushforward,
    sigma_right_inverse,
    unit_components,
)
from .errors import ComputationError, ValidationError, VerificationError
from .fundcat import ArrowWord, EdgeStep, FundObject, Relabel, build_presentation, induced_functor, make_twist
from .intmat import IntMatrix
from .morita import check_biprincipal, legs_as_functors

CONVENTIONS_VERSION = "ordered-nondegenerate/lex-reps/v1"


@dataclass(frozen=True)
class BasisEntry:
    rep: tuple
    stabilizer: object
    value: FGAbelianGroup


def _degenerate(t):
    return any(a == b for a, b in zip(t, t[1:]))


def transport_to_rep(X, s, H, choice="least"):
    """Orbit representative of s and the word (s, H) -> (rep, Stab(rep)).

    Returns ``((rep, stabilizer), word)`` where the word is Twist(g) followed
    by Relabel(g^-1 H g <= Stab(rep)), either part omitted when trivial.
    """
    s = tuple(s)
    reps, locate = X.orbit_index(len(s) - 1, choice)
    hit = locate.get(s)
    if hit is None:
        raise ValidationError("NO_ORBIT", f"{s} is not an ordered simplex of the complex")
    i, g = hit
    rep, stab = reps[i]
    G = X.group
    src = FundObject(s[0], H)
    gens = []
    Hc = H
    if g != G.identity:
        gens.append(make_twist(X, g, s[0], H))
        Hc = H.conjugate(g)
    if Hc != stab:
        gens.append(Relabel(rep[0], Hc, stab))
    return (rep, stab), ArrowWord(src, FundObject(rep[0], stab), gens)


class CochainComplexZ:
    """Cochain groups in degrees 0..max_dim+1 and differentials up to max_dim."""

    def __init__(self, X, system, max_dim, choice="least"):
        self.X = X
        self.choice = choice
        self.system = system
        self.max_dim = max_dim
        self.bases = []
        self.groups = []
        self.offsets = []
        for n in range(max_dim + 2):
            entries = []
            for rep, stab in X.orbit_index(n, choice)[0]:
                entries.append(BasisEntry(rep, stab, system.value(FundObject(rep[0], stab))))
            offs = []
            pos = 0
            for e in entries:
                offs.append(pos)
                pos += e.value.generator_count
            self.bases.append(entries)
            self.offsets.append(offs)
            self.groups.append(direct_sum(e.value for e in entries))
        self._transport_cache = {}
        self.differentials = [self._differential(n) for n in range(max_dim + 1)]
        self._subquotients = {}

    def transport(self, s, H):
        """A(transport word): value at the representative -> value at (s, H)."""
        key = (s, H)
        hit = self._transport_cache.get(key)
        if hit is None:
            (rep, stab), word = transport_to_rep(self.X, s, H, self.choice)
            idx = self.X.orbit_index(len(s) - 1, self.choice)[1][s][0]
            hit = (idx, evaluate(self.system, word))
            self._transport_cache[key] = hit
        return hit

    def _differential(self, n):
        A = self.system
        src, tgt = self.groups[n], self.groups[n + 1]
        entries = {}
        for r_idx, entry in enumerate(self.bases[n + 1]):
            R, K = entry.rep, entry.stabilizer
            rows = entry.value.generator_count
            if not rows:
                continue
            r0 = self.offsets[n + 1][r_idx]
            edge = None
            for j in range(n + 2):
                face = R[:j] + R[j + 1:]
                if _degenerate(face):
                    continue
                t_idx, block = self.transport(face, K)
                if not block.source.generator_count:
                    continue
                if j == 0:
                    edge = evaluate(A, ArrowWord.of(EdgeStep(R[0], R[1], K)))
                    block = edge.compose(block)
                sign = -1 if j % 2 else 1
                c0 = self.offsets[n][t_idx]
                m = block.matrix
                for a in range(m.rows):
                    row = m.row(a)
                    for b, x in enumerate(row):
                        if x:
                            key = (r0 + a, c0 + b)
                            entries[key] = entries.get(key, 0) + sign * x
        matrix = IntMatrix.from_sparse(tgt.generator_count, src.generator_count, entries)
        return AbHom(src, tgt, matrix)

    def check_delta_squared(self):
        for n in range(self.max_dim):
            if not self.differentials[n + 1].compose(self.differentials[n]).is_zero():
                raise ComputationError("DELTA_SQUARED_NONZERO", f"delta^{n + 1} o delta^{n} is not zero")

    def incoming(self, n):
        if n == 0:
            return AbHom.zero(FGAbelianGroup.zero(), self.groups[0])
        return self.differentials[n - 1]

    def subquotient(self, n):
        sq = self._subquotients.get(n)
        if sq is None:
            sq = subquotient(self.incoming(n), self.differentials[n])
            self._subquotients[n] = sq
        return sq

    def digest(self):
        h = hashlib.sha256()
        h.update(CONVENTIONS_VERSION.encode())
        for n, entries in enumerate(self.bases):
            for e in entries:
                h.update(repr((n, e.rep, e.stabilizer.elements, e.value.generator_count)).encode())
                h.update(repr(e.value.relations.to_lists()).encode())
        for d in self.differentials:
            h.update(repr(d.matrix.to_lists()).encode())
        return h.hexdigest()


def default_max_dim(X):
    return X.dim + 1


def assemble_complex(X, A, max_dim=None, choice="least"):
    if not X.is_admissible:
        raise ValidationError("NOT_ADMISSIBLE", "the action must be admissible")
    if A.presentation.X is not X:
        raise ValidationError("TYPE_MISMATCH", "system lives on a different complex")
    C = CochainComplexZ(X, A, default_max_dim(X) if max_dim is None else max_dim, choice)
    C.check_delta_squared()
    return C


@dataclass
class CohomologyResult:
    groups: list
    provenance: dict = field(default_factory=dict)

    def __getitem__(self, n):
        return self.groups[n]

    def __len__(self):
        return len(self.groups)

    def canonical(self):
        return [g.canonical for g in self.groups]

    def text(self):
        return "; ".join(f"H^{n} = {g}" for n, g in enumerate(self.groups))

    def to_document(self):
        return {
            "cohomology": {str(n): g.to_document() for n, g in enumerate(self.groups)},
            "provenance": dict(self.provenance),
        }


def cohomology(C):
    groups = [cohomology_at(C.incoming(n), C.differentials[n]) for n in range(C.max_dim + 1)]
    return CohomologyResult(groups, {"complex_sha256": C.digest(), "conventions": CONVENTIONS_VERSION})


# -- chain maps -------------------------------------------------------------------------


class ChainMap:
    """Degreewise homomorphisms ``source.groups[n] -> target.groups[n]``."""

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.maps = maps

    def verify(self):
        for n in range(min(self.source.max_dim, self.target.max_dim) + 1):
            lhs = self.target.differentials[n].compose(self.maps[n])
            rhs = self.maps[n + 1].compose(self.source.differentials[n])
            if not lhs.equals(rhs):
                raise ComputationError("CHAIN_MAP_BROKEN", f"chain map fails to commute in degree {n}")
        return self


def pullback_cochain_map(phi, C_target, C_source):
    """phi^*: cochains on the target with A -> cochains on the source with phi^*A."""
    hom = phi.group_hom
    top = min(C_target.max_dim, C_source.max_dim) + 1
    maps = []
    for n in range(top + 1):
        src, tgt = C_target.groups[n], C_source.groups[n]
        entries = {}
        for r_idx, entry in enumerate(C_source.bases[n]):
            if not entry.value.generator_count:
                continue
            s = phi.apply_tuple(entry.rep)
            if _degenerate(s):
                continue
            H = entry.stabilizer.image(hom)
            t_idx, block = C_target.transport(s, H)
            if not block.target.same_presentation(entry.value):
                raise ComputationError("CHAIN_MAP_BROKEN", f"value mismatch at {entry.rep}")
            r0 = C_source.offsets[n][r_idx]
            c0 = C_target.offsets[n][t_idx]
            m = block.matrix
            for a in range(m.rows):
                for b, x in enumerate(m.row(a)):
                    if x:
                        entries[(r0 + a, c0 + b)] = entries.get((r0 + a, c0 + b), 0) + x
        maps.append(AbHom(src, tgt, IntMatrix.from_sparse(tgt.generator_count, src.generator_count, entries)))
    return ChainMap(C_target, C_source, maps).verify()


def coefficient_change_map(eta, C_S, C_T):
    """Blockwise application of the components of eta: S => T."""
    maps = []
    for n in range(min(C_S.max_dim, C_T.max_dim) + 2):
        src, tgt = C_S.groups[n], C_T.groups[n]
        entries = {}
        for i, (es, et) in enumerate(zip(C_S.bases[n], C_T.bases[n])):
            comp = eta.component(FundObject(es.rep[0], es.stabilizer))
            m = comp.matrix
            r0, c0 = C_T.offsets[n][i], C_S.offsets[n][i]
            for a in range(m.rows):
                for b, x in enumerate(m.row(a)):
                    if x:
                        entries[(r0 + a, c0 + b)] = x
        maps.append(AbHom(src, tgt, IntMatrix.from_sparse(tgt.generator_count, src.generator_count, entries)))
    return ChainMap(C_S, C_T, maps).verify()


@dataclass
class InducedMaps:
    maps: list
    isomorphism: bool
    per_degree: list


def induced_cohomology_map(f, max_dim=None):
    top = min(f.source.max_dim, f.target.max_dim) if max_dim is None else max_dim
    maps, flags = [], []
    for n in range(top + 1):
        m = induced_map(f.maps[n], f.source.subquotient(n), f.target.subquotient(n))
        maps.append(m)
        flags.append(m.is_isomorphism())
    return InducedMaps(maps, all(flags), flags)


def orbit_space_cohomology(X, max_dim=None, presentation=None):
    P = presentation or build_presentation(X)
    return cohomology(assemble_complex(X, constant_system(P), max_dim))


# -- the Morita pipeline ----------------------------------------------------------------------


@dataclass
class MoritaReport:
    left: CohomologyResult
    right: CohomologyResult
    lambda_iso: list
    rho_iso: list
    eta_iso: list
    certificate: str
    max_dim: int

    @property
    def isomorphic(self):
        return all(self.lambda_iso) and all(self.rho_iso) and all(self.eta_iso) and (
            self.left.canonical() == self.right.canonical()
        )

    def text(self):
        lines = [
            "biprincipal: PASS",
            f"left:  {self.left.text()}",
            f"right: {self.right.text()}",
        ]
        for n in range(self.max_dim + 1):
            ok = self.lambda_iso[n] and self.rho_iso[n] and self.eta_iso[n]
            lines.append(
                f"degree {n}: lambda* {'iso' if self.lambda_iso[n] else 'NOT iso'}, "
                f"rho* {'iso' if self.rho_iso[n] else 'NOT iso'}, "
                f"eta* {'iso' if self.eta_iso[n] else 'NOT iso'} -> {'ISOMORPHIC' if ok else 'FAILED'}"
            )
        lines.append(f"natural isomorphism certificate: {self.certificate}")
        if self.isomorphic:
            lines.append(f"ISOMORPHIC through degree {self.max_dim}")
        else:
            lines.append("NOT ISOMORPHIC")
        return "\n".join(lines) + "\n"


def verify_morita(B, A, max_dim=None, section=None):
    """Transport A across a biprincipal bibundle and certify the isomorphism."""
    rep = check_biprincipal(B)
    if not rep.passed:
        raise VerificationError("NOT_BIPRINCIPAL", rep.failures[0])
    PY = A.presentation
    if PY.X is not B.right:
        raise ValidationError("TYPE_MISMATCH", "system does not live on the right-hand complex")
    PX = build_presentation(B.left)
    PZ = build_presentation(B.total)
    lam, rho = legs_as_functors(B)
    F_lam = induced_functor(lam, PZ, PX)
    F_rho = induced_functor(rho, PZ, PY)
    rhoA = pullback(F_rho, A)
    sigma = sigma_right_inverse(B, PX, PZ, section=section)
    pushed = pushforward(B, rhoA, sigma=sigma)
    round_trip = pullback(F_lam, pushed)
    eta = check_natural_iso(round_trip, rhoA, unit_components(B, rhoA, sigma, round_trip))
    if eta is None:
        raise VerificationError("NO_NATURAL_ISO", "the unit components are not a natural isomorphism")
    if max_dim is None:
        max_dim = max(B.left.dim, B.right.dim, B.total.dim) + 1
    C_X = assemble_complex(B.left, pushed, max_dim)
    C_Z1 = assemble_complex(B.total, round_trip, max_dim)
    C_Z2 = assemble_complex(B.total, rhoA, max_dim)
    C_Y = assemble_complex(B.right, A, max_dim)
    lam_map = pullback_cochain_map(lam, C_X, C_Z1)
    eta_map = coefficient_change_map(eta, C_Z1, C_Z2)
    rho_map = pullback_cochain_map(rho, C_Y, C_Z2)
    lam_ind = induced_cohomology_map(lam_map)
    eta_ind = induced_cohomology_map(eta_map)
    rho_ind = induced_cohomology_map(rho_map)
    n_obj = len(PZ.objects)
    cert = f"lambda^* lambda_* (rho^* A) => rho^* A verified on {n_obj} objects and {len(PZ.generators)} generators"
    return MoritaReport(
        cohomology(C_X),
        cohomology(C_Y),
        lam_ind.per_degree,
        rho_ind.per_degree,
        eta_ind.per_degree,
        cert,
        max_dim,
    )

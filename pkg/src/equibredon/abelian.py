"""Finitely generated abelian groups by presentations, and their homomorphisms."""

from functools import cached_property

from .errors import ComputationError, ValidationError
from .intmat import (
    IntMatrix,
    Lattice,
    block_diagonal,
    integer_kernel,
    rank_and_diagonal,
)


class FGAbelianGroup:
    """``Z^generator_count`` modulo the row lattice of ``relations``.

    Equality compares canonical forms (free rank and invariant factors);
    use ``same_presentation`` when the exact presentation matters.
    """

    def __init__(self, generator_count, relations=None):
        self.generator_count = generator_count
        if relations is None:
            relations = IntMatrix(0, generator_count)
        elif not isinstance(relations, IntMatrix):
            relations = IntMatrix.from_rows(relations, generator_count)
        if relations.cols != generator_count:
            raise ValidationError("TYPE_MISMATCH", "relation width differs from generator count")
        self.relations = relations

    @classmethod
    def free(cls, rank):
        return cls(rank)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def from_invariants(cls, free_rank, factors=()):
        """Canonical presentation: torsion generators first, then free ones."""
        factors = [d for d in factors if d != 1]
        n = len(factors) + free_rank
        rels = [[d if j == i else 0 for j in range(n)] for i, d in enumerate(factors)]
        return cls(n, IntMatrix(len(rels), n, rels))

    @cached_property
    def relation_lattice(self):
        return Lattice(self.generator_count, [self.relations.row(i) for i in range(self.relations.rows)])

    @cached_property
    def canonical(self):
        """``(free_rank, invariant_factors)``."""
        rank, diag = rank_and_diagonal(self.relations)
        factors = tuple(d for d in diag if d != 1)
        return (self.generator_count - rank, factors)

    @property
    def free_rank(self):
        return self.canonical[0]

    @property
    def invariant_factors(self):
        return self.canonical[1]

    @property
    def is_free(self):
        return self.relations.rows == 0

    def is_trivial(self):
        return self.canonical == (0, ())

    def canonical_group(self):
        return FGAbelianGroup.from_invariants(*self.canonical)

    def same_presentation(self, other):
        return self.generator_count == other.generator_count and self.relations == other.relations

    def __eq__(self, other):
        if not isinstance(other, FGAbelianGroup):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"FGAbelianGroup({self})"

    def __str__(self):
        free, factors = self.canonical
        parts = [f"Z/{d}" for d in factors]
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        return " + ".join(parts) if parts else "0"

    def to_document(self):
        free, factors = self.canonical
        return {"free_rank": free, "torsion": list(factors)}

    def is_zero_element(self, vec):
        return self.relation_lattice.contains(vec)


def direct_sum(groups):
    groups = list(groups)
    n = sum(g.generator_count for g in groups)
    rels = block_diagonal([g.relations for g in groups]) if groups else IntMatrix(0, 0)
    return FGAbelianGroup(n, rels)


class AbHom:
    """Homomorphism ``source -> target``; ``matrix`` is target-gens x source-gens.

    Validity (relations of the source land in the relation lattice of the
    target) is checked on construction unless ``check=False``.
    """

    def __init__(self, source, target, matrix, check=True):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix, source.generator_count) if matrix else IntMatrix(target.generator_count, source.generator_count)
        if matrix.shape != (target.generator_count, source.generator_count):
            raise ValidationError(
                "TYPE_MISMATCH",
                f"matrix shape {matrix.shape} does not fit {target.generator_count}x{source.generator_count}",
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self._validate()

    def _validate(self):
        rels = self.source.relations
        if rels.rows == 0:
            return
        lat = self.target.relation_lattice
        for i in range(rels.rows):
            img = self.matrix.apply(rels.row(i))
            if not lat.contains(img):
                raise ValidationError("HOM_INVALID", f"relation {list(rels.row(i))} is not sent to zero")

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.generator_count), check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, IntMatrix(target.generator_count, source.generator_count), check=False)

    def __call__(self, vec):
        return self.matrix.apply(vec)

    def compose(self, first):
        """``self o first`` (apply ``first``, then ``self``)."""
        if not first.target.same_presentation(self.source):
            raise ValidationError("NOT_COMPOSABLE", "presentations do not match")
        return AbHom(first.source, self.target, self.matrix @ first.matrix, check=False)

    def __add__(self, other):
        return AbHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def equals(self, other):
        """Equality as homomorphisms (modulo target relations)."""
        if not (self.source.same_presentation(other.source) and self.target.same_presentation(other.target)):
            return False
        diff = self.matrix - other.matrix
        if diff.is_zero():
            return True
        lat = self.target.relation_lattice
        return all(lat.contains(diff.column(j)) for j in range(diff.cols))

    def is_zero(self):
        if self.matrix.is_zero():
            return True
        lat = self.target.relation_lattice
        return all(lat.contains(self.matrix.column(j)) for j in range(self.matrix.cols))

    def is_surjective(self):
        n = self.target.generator_count
        gens = [self.matrix.column(j) for j in range(self.matrix.cols)]
        gens += [self.target.relations.row(i) for i in range(self.target.relations.rows)]
        lat = Lattice(n, gens)
        return lat.rank == n and all(lat.contains(tuple(int(i == k) for i in range(n))) for k in range(n))

    def kernel_lattice(self):
        """Lattice of source vectors mapped into the target relations."""
        rt = self.target.relations
        big = self.matrix.hstack(-rt.transpose()) if rt.rows else self.matrix
        n = self.source.generator_count
        return Lattice(n, [v[:n] for v in integer_kernel(big)])

    def is_injective(self):
        ker = self.kernel_lattice()
        return self.source.relation_lattice.contains_lattice(ker)

    def is_isomorphism(self):
        return self.is_surjective() and self.is_injective()

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target}, {self.matrix.to_lists()})"


class Subquotient:
    """ker(d_out) / im(d_in) with an explicit basis of the cocycle lattice."""

    def __init__(self, group, cocycles, middle):
        self.group = group
        self.cocycles = cocycles
        self.middle = middle

    def class_of(self, vec):
        coords = self.cocycles.coordinates(vec)
        if coords is None:
            raise ComputationError("NOT_A_COCYCLE", "vector does not lie in the kernel")
        return coords


def _check_composable(d_in, d_out):
    if not d_in.target.same_presentation(d_out.source):
        raise ValidationError("NOT_COMPOSABLE", "d_in.target differs from d_out.source")
    if not d_out.compose(d_in).is_zero():
        raise ComputationError("COMPOSITION_NONZERO", "d_out o d_in is not zero")


def subquotient(d_in, d_out):
    """Full lattice computation of ker(d_out)/im(d_in)."""
    _check_composable(d_in, d_out)
    mid = d_out.source
    cocycles = d_out.kernel_lattice()
    gens = [d_in.matrix.column(j) for j in range(d_in.matrix.cols)]
    gens += [mid.relations.row(i) for i in range(mid.relations.rows)]
    rels = []
    for v in gens:
        c = cocycles.coordinates(v)
        if c is None:
            raise ComputationError("COMPOSITION_NONZERO", "image is not inside the kernel")
        if any(c):
            rels.append(c)
    r = cocycles.rank
    group = FGAbelianGroup(r, IntMatrix(len(rels), r, rels))
    return Subquotient(group, cocycles, mid)


def cohomology_at(d_in, d_out):
    """ker(d_out)/im(d_in), returned in canonical presentation."""
    mid = d_out.source
    if d_in.source.is_free and mid.is_free and d_out.target.is_free:
        _check_composable(d_in, d_out)
        r_out, _ = rank_and_diagonal(d_out.matrix)
        r_in, diag = rank_and_diagonal(d_in.matrix)
        free = mid.generator_count - r_out - r_in
        return FGAbelianGroup.from_invariants(free, [d for d in diag if d != 1])
    return subquotient(d_in, d_out).group.canonical_group()


def induced_map(f, sq_source, sq_target):
    """The map on subquotients induced by a chain-level homomorphism ``f``."""
    cols = []
    for b in sq_source.cocycles.basis():
        cols.append(sq_target.class_of(f(b)))
    r_s = sq_source.cocycles.rank
    r_t = sq_target.cocycles.rank
    data = [[cols[j][i] for j in range(r_s)] for i in range(r_t)]
    return AbHom(sq_source.group, sq_target.group, IntMatrix(r_t, r_s, data))

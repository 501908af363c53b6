import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equibredon.abelian import AbHom, FGAbelianGroup, cohomology_at, direct_sum
from equibredon.errors import ValidationError
from equibredon.groups import (
    GroupHom,
    cyclic_group,
    direct_product,
    enumerate_subgroups,
    graph_subgroup,
    left_cosets,
    permutation_group,
    trivial_group,
)
from equibredon.intmat import IntMatrix, integer_kernel, smith_normal_form
from equibredon.models import klein_four

from oracles import brute_subgroups, free_cohomology, torsion_of


def diag(D):
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def test_snf_identity_one_by_one():
    U, D, V = smith_normal_form(IntMatrix.from_rows([[1]]))
    assert D.to_lists() == [[1]]


def test_snf_diag_two_three():
    U, D, V = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert D.to_lists() == [[1, 0], [0, 6]]
    assert (U @ IntMatrix.from_rows([[2, 0], [0, 3]]) @ V) == D


def test_snf_empty_rows():
    M = IntMatrix.zeros(0, 3)
    U, D, V = smith_normal_form(M)
    assert (D.rows, D.cols) == (0, 3)
    assert U.rows == 0
    assert V == IntMatrix.identity(3)


def test_snf_is_deterministic():
    M = IntMatrix.from_rows([[4, 6, 2], [2, 8, -2], [0, 2, 6]])
    assert smith_normal_form(M) == smith_normal_form(M)


matrices = st.integers(0, 4).flatmap(
    lambda r: st.integers(0, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: (r, c, rows)
        )
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(data):
    r, c, rows = data
    M = IntMatrix(r, c, rows)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    d = [x for x in diag(D) if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    # agrees with an independent reduction
    expected = torsion_of(rows, c) if r and c else []
    assert [x for x in d if x > 1] == expected


def test_integer_kernel_spans_kernel():
    M = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ker = integer_kernel(M)
    assert len(ker) == 2
    for v in ker:
        assert M.apply(v) == (0, 0)


# -- abelian groups and cohomology -------------------------------------------------------------------


Z = FGAbelianGroup.free(1)
ZERO = FGAbelianGroup.zero()


def hom(src, tgt, rows):
    return AbHom(src, tgt, IntMatrix(tgt.generator_count, src.generator_count, rows))


def test_cohomology_lone_integers():
    assert cohomology_at(AbHom.zero(ZERO, Z), AbHom.zero(Z, ZERO)) == Z


def test_cohomology_kernel_of_doubling_is_zero():
    assert cohomology_at(AbHom.zero(ZERO, Z), hom(Z, Z, [[2]])).is_trivial


def test_cohomology_cokernel_of_doubling():
    H = cohomology_at(hom(Z, Z, [[2]]), AbHom.zero(Z, ZERO))
    assert (H.free_rank, H.invariant_factors) == (0, (2,))
    assert str(H) == "Z/2"


def test_cohomology_rejects_nonzero_composite():
    with pytest.raises(Exception) as exc:
        cohomology_at(hom(Z, Z, [[1]]), hom(Z, Z, [[1]]))
    assert exc.value.code == "COMPOSITION_NONZERO"


def test_group_text_format():
    G = FGAbelianGroup.from_invariants(2, [2])
    assert str(G) == "Z/2 + Z^2"
    assert str(FGAbelianGroup.zero()) == "0"
    assert G.to_document() == {"free_rank": 2, "torsion": [2]}


def test_group_equality_is_canonical():
    A = FGAbelianGroup(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert A == FGAbelianGroup.from_invariants(0, [6])
    assert not A.same_presentation(FGAbelianGroup.from_invariants(0, [6]))


def test_hom_validity_is_eager():
    Z2 = FGAbelianGroup.from_invariants(0, [2])
    with pytest.raises(ValidationError):
        hom(Z2, Z, [[1]])  # 2 -> 2 is not a relation of Z
    hom(Z, Z2, [[1]])


def test_torsion_cohomology():
    Z4 = FGAbelianGroup.from_invariants(0, [4])
    # Z/4 --x2--> Z/4 --x2--> Z/4: middle cohomology is ker/im = Z/2 / Z/2 = 0
    f = hom(Z4, Z4, [[2]])
    assert cohomology_at(f, f).is_trivial


three_term = st.integers(1, 4).flatmap(
    lambda a: st.integers(1, 4).flatmap(
        lambda b: st.integers(1, 4).flatmap(
            lambda c: st.tuples(
                st.just((a, b, c)),
                st.lists(st.lists(st.integers(-3, 3), min_size=a, max_size=a), min_size=b, max_size=b),
                st.lists(st.lists(st.integers(-3, 3), min_size=b, max_size=b), min_size=c, max_size=c),
            )
        )
    )
)


@settings(max_examples=120, deadline=None)
@given(three_term)
def test_cohomology_matches_oracle(data):
    (a, b, c), d_in, d_out = data
    M_out = IntMatrix(c, b, d_out)
    # make d_in land in ker(d_out): kernel basis times the random coefficients
    ker = integer_kernel(M_out)
    if ker:
        K = IntMatrix(b, len(ker), [[v[i] for v in ker] for i in range(b)])
        coeffs = IntMatrix(len(ker), a, [(d_in[i % b]) for i in range(len(ker))])
        M_in = K @ coeffs
    else:
        M_in = IntMatrix.zeros(b, a)
    d_in = M_in.to_lists()
    assert not any(x for row in (M_out @ M_in).to_lists() for x in row)
    A, B, C = (FGAbelianGroup.free(n) for n in (a, b, c))
    H = cohomology_at(AbHom(A, B, M_in), AbHom(B, C, M_out))
    expected = free_cohomology([a, b, c], [d_in, d_out])[1]
    assert (H.free_rank, list(H.invariant_factors)) == expected


def test_direct_sum_adds_invariants():
    S = direct_sum([FGAbelianGroup.from_invariants(1, [2]), FGAbelianGroup.from_invariants(0, [3])])
    assert (S.free_rank, S.invariant_factors) == (1, (6,))


# -- finite groups --------------------------------------------------------------------------------------


def test_subgroups_of_trivial_group():
    assert [H.elements for H in enumerate_subgroups(trivial_group())] == [(0,)]


def test_subgroups_of_z2():
    assert [H.elements for H in enumerate_subgroups(cyclic_group(2))] == [(0,), (0, 1)]


def test_klein_four_has_five_subgroups():
    assert len(enumerate_subgroups(klein_four())) == 5


@pytest.mark.parametrize(
    "group",
    [
        cyclic_group(6),
        klein_four(),
        direct_product(cyclic_group(2), cyclic_group(4)),
        permutation_group([(1, 0, 2), (1, 2, 0)])[0],
        permutation_group([(1, 2, 3, 0), (3, 2, 1, 0)])[0],
        direct_product(klein_four(), cyclic_group(2)),
        direct_product(klein_four(), klein_four()),
        direct_product(permutation_group([(1, 2, 3, 0), (3, 2, 1, 0)])[0], cyclic_group(2)),
    ],
)
def test_subgroup_enumeration_matches_subset_filter(group):
    found = sorted(H.elements for H in enumerate_subgroups(group))
    assert found == sorted(brute_subgroups(group.mul))
    listed = [H.elements for H in enumerate_subgroups(group)]
    assert listed == sorted(listed, key=lambda e: (len(e), e))


def test_left_cosets():
    G = klein_four()
    assert len(left_cosets(G, G.whole)) == 1
    assert len(left_cosets(G, G.trivial_subgroup)) == 4
    blocks = left_cosets(G, G.subgroup([0, 2]))
    assert len(blocks) == 2
    assert 0 in blocks[0]


def test_left_cosets_require_subgroup():
    G = klein_four()
    with pytest.raises(ValidationError) as exc:
        left_cosets(G, cyclic_group(2).whole)
    assert exc.value.code == "NOT_SUBGROUP"


def test_graph_subgroup_trivial_and_diagonal():
    G = cyclic_group(2)
    P = direct_product(G, G)
    assert graph_subgroup(G.trivial_subgroup, GroupHom(G, G, {0: 0}), P).elements == (0,)
    diag_ = graph_subgroup(G.whole, GroupHom(G, G, [0, 1]), P)
    assert diag_.elements == (0, 3)


def test_graph_subgroup_rejects_non_hom():
    G = cyclic_group(3)
    P = direct_product(G, G)
    with pytest.raises(ValidationError) as exc:
        graph_subgroup(G.whole, GroupHom(G, G, [0, 1, 1], check=False), P)
    assert exc.value.code == "HOM_INVALID"


def test_group_axioms_checked():
    with pytest.raises(ValidationError):
        from equibredon.groups import FiniteGroup

        FiniteGroup([[0, 1], [0, 1]])


def test_klein_four_mul_is_componentwise():
    G = klein_four()
    for a, b in itertools.product(range(4), repeat=2):
        assert G.mul[a][b] == ((a >> 1) ^ (b >> 1)) * 2 + ((a & 1) ^ (b & 1))

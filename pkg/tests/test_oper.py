import pytest

from dormantlab.errors import (
    DegreeBoundViolated,
    IncompatibleOddPart,
    InputError,
    MalformedBlocks,
    NotDormant,
    NotSplit,
    ProfileInconsistent,
)
from dormantlab.linalg import Matrix
from dormantlab.oper import (
    CompanionOper,
    ScalarOperator,
    antidiagonal_gram_for,
    extend_to_even,
    image_profile,
    is_orthogonal_compatible,
    kernel_sheaf_profile,
    scalar_from_connection,
    sign_antidiagonal_gram,
    split_even,
    symmetric_power,
    to_companion,
)
from dormantlab.poly import Poly


def companion(coeff_lists, p):
    return CompanionOper([Poly(c, p) for c in coeff_lists], p)


def test_scalar_operator_shape():
    p = 5
    op = companion([[1], [0, 2]], p).scalar_operator()
    # theta^3 + f_2 theta + f_3, subleading coefficient zero
    assert op.order == 3
    assert op.coeffs[2] == 0
    assert op.coeffs[1] == Poly([1], p)
    assert op.coeffs[0] == Poly([0, 2], p)


def test_scalar_apply_is_theta_power():
    p = 7
    op = companion([[0], [0]], p).scalar_operator()
    y = Poly.x(p)
    assert op.apply(y) == y.theta().theta().theta()


def test_degree_bound_enforced():
    p = 5
    with pytest.raises(DegreeBoundViolated):
        companion([[0, 0, 0, 1]], p)  # deg f_2 = 3 > 2


def test_exponents_rank2():
    p = 5
    oper = companion([[0]], p)
    assert oper.exponents(0).exponents == (0, 0)
    assert oper.exponents(1).exponents == (0, 0)
    # raw roots {0, 1} at infinity, shifted by (n-1)/2 = 1/2 = 3 mod 5
    assert oper.exponents("inf").exponents == (2, 3)


def test_exponents_not_split():
    p = 5
    with pytest.raises(NotSplit):
        companion([[2]], p).exponents(0)  # s^2 + 2 has no roots mod 5


def test_indicial_respects_local_coordinate():
    # f_2 = x has different behavior at 0 and 1
    p = 7
    oper = companion([[0, 1]], p)
    ind0 = oper.scalar_operator().indicial(0)
    ind1 = oper.scalar_operator().indicial(1)
    assert ind0 == Poly([0, 0, 1], p)  # s^2 (f_2(0) = 0)
    assert ind1 == Poly([1, 0, 1], p)  # s^2 + f_2(1)


def test_self_duality_odd_order():
    p = 5
    # theta^3 + f_2 theta + f_3 is self-dual iff 2 f_3 = theta(f_2)
    f2 = Poly([0, 1], p)
    f3_good = f2.theta() * 3  # 3 = 1/2 mod 5
    assert companion([list(f2.coeffs), list(f3_good.coeffs)], p).is_self_dual()
    assert not companion([list(f2.coeffs), [1]], p).is_self_dual()


def test_symmetric_power_and_gram():
    p = 5
    base = companion([[1]], p)
    conn, gram = symmetric_power(base, 2)
    assert conn.rank == 3
    assert gram is not None
    assert is_orthogonal_compatible(conn, gram)
    # odd powers carry no symmetric form
    conn3, gram3 = symmetric_power(base, 3)
    assert conn3.rank == 4 and gram3 is None


def test_symmetric_power_preserves_dormancy():
    p = 5
    base = companion([[1, 0, 3]], p)
    assert base.is_dormant()
    for m in (2, 3):
        conn, _ = symmetric_power(base, m)
        assert conn.is_dormant()


def test_to_companion_round_trip():
    p = 5
    oper = companion([[1], [0, 2]], p)
    assert to_companion(oper.connection()) == oper


def test_to_companion_of_symmetric_power():
    p = 5
    base = companion([[1]], p)
    conn, _ = symmetric_power(base, 2)
    comp = to_companion(conn)
    assert comp.order == 3
    # subleading scalar coefficient vanished along the way
    assert comp.scalar_operator().coeffs[2] == 0
    assert comp.is_self_dual()


def test_companion_has_no_constant_gram():
    # the companion frame of a sym^2 witness is self-dual but the literal
    # antidiagonal-sign pairing is not flat for it
    p = 5
    comp = to_companion(symmetric_power(companion([[1]], p), 2)[0])
    assert is_orthogonal_compatible(comp, None)
    j = sign_antidiagonal_gram(3, p)
    assert not is_orthogonal_compatible(comp, j)


def test_extend_split_round_trip():
    p = 5
    base = companion([[1]], p)
    odd = to_companion(symmetric_power(base, 2)[0])
    nu = Poly([1, 2], p)
    even = extend_to_even(odd, nu)
    assert even.rank == 4
    back, nu_back = split_even(even)
    assert back == odd and nu_back == nu


def test_extend_rejects_bad_inputs():
    p = 5
    odd = to_companion(symmetric_power(companion([[1]], p), 2)[0])
    with pytest.raises(DegreeBoundViolated):
        extend_to_even(odd, Poly([1, 1, 1, 1], p))  # deg 3 > ell = 2
    not_self_dual = companion([[0, 1], [1]], p)
    with pytest.raises(IncompatibleOddPart):
        extend_to_even(not_self_dual, Poly.one(p))
    with pytest.raises(InputError):
        extend_to_even(companion([[1]], p), Poly.one(p))  # even order odd part


def test_split_rejects_malformed():
    p = 5
    odd = to_companion(symmetric_power(companion([[1]], p), 2)[0])
    even = extend_to_even(odd, Poly.one(p))
    rows = [list(r) for r in even.connection.matrix.entries]
    rows[3][0] = rows[0][0] + 1  # violate the zero last row
    from dormantlab.connection import LogConnection

    with pytest.raises(MalformedBlocks):
        split_even(LogConnection(Matrix(rows), p))


def test_kernel_profile_rank2():
    p = 5
    oper = companion([[1]], p)
    profile = kernel_sheaf_profile(oper)
    assert profile.rank == 2
    assert profile.degree == sum(profile.splitting)
    assert len(profile.splitting) == 2


def test_kernel_profile_requires_dormancy():
    p = 5
    bad = companion([[1, 1]], p)
    with pytest.raises(NotDormant):
        kernel_sheaf_profile(bad)
    with pytest.raises(ProfileInconsistent):
        kernel_sheaf_profile(bad, require_dormant=False)


def test_image_profile_needs_odd_order():
    p = 5
    with pytest.raises(InputError):
        image_profile(companion([[1]], p))


def test_antidiagonal_gram_matches_known_form():
    # sym^2 in the monomial basis carries antidiag(2, -1, 2)
    p = 7
    conn, _ = symmetric_power(companion([[1]], p), 2)
    gram = antidiagonal_gram_for(conn)
    diag = [gram.matrix[i, 2 - i].value for i in range(3)]
    # normalized to j_0 = 1: (1, -1/2, 1) times 2 is (2, -1, 2)
    scaled = [(2 * d) % p for d in diag]
    assert scaled == [2, p - 1, 2]


def test_scalar_from_connection_agrees():
    p = 5
    oper = companion([[1], [0, 2]], p)
    op = scalar_from_connection(oper.connection())
    assert ScalarOperator(oper.scalar_operator().coeffs, p) == op

import sympy
from hypothesis import given, strategies as st

from geoquant.linalg import NotInSpan, Span, inverse, matmul, rank
from geoquant.polycore import coeff

small = st.integers(-3, 3)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_agrees_with_sympy(rows):
    vecs = [{j: coeff(x) for j, x in enumerate(r) if x} for r in rows]
    assert rank(vecs) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_agrees_with_sympy(rows):
    M = sympy.Matrix(rows)
    if M.det() == 0:
        return
    inv = inverse([[coeff(x) for x in r] for r in rows])
    want = M.inv()
    assert all(inv[i][j] == coeff(str(want[i, j])) for i in range(3) for j in range(3))
    prod = matmul(inv, [[coeff(x) for x in r] for r in rows])
    assert all(prod[i][j] == coeff(int(i == j)) for i in range(3) for j in range(3))


def test_express_and_residual():
    sp = Span([{0: coeff(1), 1: coeff(1)}, {1: coeff(1)}])
    combo = sp.express({0: coeff(2), 1: coeff(5)})
    assert combo == {0: coeff(2), 1: coeff(3)}
    try:
        Span([{0: coeff(1)}]).express({1: coeff(1)})
    except NotInSpan as exc:
        assert exc.residual == {1: coeff(1)}
    else:
        raise AssertionError("expected NotInSpan")

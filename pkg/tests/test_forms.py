"""Exterior calculus substrate: forms, insertions, derivations, commutators."""

import pytest
from hypothesis import given, strategies as st

from gradedpoisson.forms import Derivation, Form, VectorField, VectorValuedForm, wedge
from gradedpoisson.scalars import coordinate_field

F = coordinate_field(("x", "y"))
X, Y = F.gens
DX = Form.coordinate_diff(F, 0)
DY = Form.coordinate_diff(F, 1)
EX = VectorField.basis(F, 0)
EY = VectorField.basis(F, 1)
D_OP = Derivation.exterior(F)


@st.composite
def polys(draw, field=F):
    value = field.zero
    for _ in range(draw(st.integers(0, 3))):
        term = field.constant(draw(st.integers(-3, 3)))
        for index in draw(st.lists(st.integers(0, field.dimension - 1), max_size=3)):
            term = term * field.gens[index]
        value = value + term
    return value


@st.composite
def forms(draw, field=F, degree=None):
    dim = field.dimension
    if degree is None:
        degree = draw(st.integers(0, dim))
    from itertools import combinations

    terms = {}
    for idx in combinations(range(dim), degree):
        terms[idx] = draw(polys(field))
    return Form(field, terms)


@st.composite
def vector_fields(draw, field=F):
    return VectorField(field, [draw(polys(field)) for _ in range(field.dimension)])


def test_wedge_examples():
    assert DX.wedge(DX).is_zero
    assert DX.wedge(DY) == -(DY.wedge(DX))
    assert (DY * X).wedge(DX * Y) == DX.wedge(DY) * (-X * Y)
    assert wedge(Form.function(X), DX, DY) == DX.wedge(DY) * X


def test_exterior_derivative_examples():
    assert (DY * X).d() == DX.wedge(DY)
    top = DX.wedge(DY) * (4 / (1 + X**2 + Y**2) ** 2)
    assert top.d().is_zero


def test_insertion_examples():
    assert DX.wedge(DY).insert_vector(EX) == DY
    assert Form.function(X * Y).insert_vector(EX).is_zero
    assert DY.insert_vector(EY * X) == Form.function(X)


def test_lie_derivative_examples():
    assert (DY * X).lie_derivative(EX) == DY
    f = Form.function(X**2 * Y)
    assert f.lie_derivative(EX) == Form.function(X * Y * 2)


def test_insert_vvform_identity_counts_degree():
    alpha = DX.wedge(DY) * (X + Y)
    ident = VectorValuedForm.identity(F)
    assert ident.insert_into(alpha) == 2 * alpha
    assert ident.insert_into(Form.function(X)).is_zero
    assert Derivation.exterior(F)(Form.function(X) * 1) == DX


def test_form_validation():
    with pytest.raises(ValueError):
        Form(F, {(1, 0): F.one})
    with pytest.raises(ValueError):
        Form(F, {(0, 5): F.one})
    with pytest.raises(ValueError):
        VectorValuedForm(F, [DX, Form.function(X)])


@given(forms(), forms())
def test_wedge_graded_commutativity(a, b):
    for pa, ha in a.homogeneous_parts().items():
        for pb, hb in b.homogeneous_parts().items():
            sign = -1 if (pa % 2 and pb % 2) else 1
            assert ha.wedge(hb) == sign * hb.wedge(ha)


@given(forms())
def test_d_squared_is_zero(a):
    assert a.d().d().is_zero


@given(forms(), forms())
def test_d_leibniz(a, b):
    for pa, ha in a.homogeneous_parts().items():
        sign = -1 if pa % 2 else 1
        lhs = ha.wedge(b).d()
        rhs = ha.d().wedge(b) + sign * ha.wedge(b.d())
        assert lhs == rhs


@given(vector_fields(), forms())
def test_cartan_formula_matches_leibniz_expansion(x, a):
    # direct expansion: L_X(c dxI) = X(c) dxI + c * sum_m dxI with dx^{i_m} -> d(X^{i_m})
    direct = Form.zero(F)
    for idx, coeff in a.terms.items():
        base = Form._raw(F, {idx: F.one})
        direct = direct + base * x(coeff)
        for pos, i in enumerate(idx):
            dxm = Form.function(x.components[i]).d()
            rest_before = idx[:pos]
            rest_after = idx[pos + 1 :]
            piece = Form._raw(F, {rest_before: F.one}) if rest_before else Form.function(F.one)
            piece = piece.wedge(dxm)
            tail = Form._raw(F, {rest_after: F.one}) if rest_after else Form.function(F.one)
            piece = piece.wedge(tail)
            direct = direct + piece * coeff
    assert a.lie_derivative(x) == direct


@given(vector_fields(), vector_fields(), forms())
def test_basic_commutator_relations(x, y, a):
    lx, ly = Derivation.lie(x), Derivation.lie(y)
    ix, iy = Derivation.insertion(x), Derivation.insertion(y)
    xy = x.bracket(y)
    assert lx.commutator(iy) == Derivation.insertion(xy)
    assert lx.commutator(ly) == Derivation.lie(xy)
    assert ix.commutator(iy).is_zero
    assert lx.commutator(iy)(a) == lx(iy(a)) - iy(lx(a))


@given(forms())
def test_exterior_derivation_is_d(a):
    assert D_OP(a) == a.d()
    assert D_OP.commutator(D_OP).is_zero


@st.composite
def derivations(draw, field=F):
    kind = draw(st.integers(0, 2))
    if kind == 0:
        return Derivation.insertion(draw(vector_fields(field)))
    if kind == 1:
        return Derivation.lie(draw(vector_fields(field)))
    k = VectorValuedForm(field, [draw(forms(field, degree=1)) for _ in range(field.dimension)], degree=1)
    lp = VectorValuedForm(field, [draw(forms(field, degree=2)) for _ in range(field.dimension)], degree=2)
    return Derivation(field, {1: (k, lp)})


@given(derivations(), forms(), forms())
def test_derivation_graded_leibniz(dv, a, b):
    k = dv.degree
    if k is None or dv.is_zero:
        return
    for pa, ha in a.homogeneous_parts().items():
        sign = -1 if (k % 2 and pa % 2) else 1
        assert dv(ha.wedge(b)) == dv(ha).wedge(b) + sign * ha.wedge(dv(b))


@given(derivations(), derivations())
def test_commutator_matches_operator_composition(dv, ev):
    p, q = dv.degree, ev.degree
    if p is None or q is None:
        return
    sign = -1 if (p % 2 and q % 2) else 1
    comm = dv.commutator(ev)
    for probe in (Form.function(X * Y), DX * Y, DX.wedge(DY) * X):
        assert comm(probe) == dv(ev(probe)) - sign * ev(dv(probe))


@given(derivations(), derivations(), derivations())
def test_commutator_graded_jacobi(a, b, c):
    pa, pb = a.degree, b.degree
    if pa is None or pb is None:
        return
    sign = -1 if (pa % 2 and pb % 2) else 1
    lhs = a.commutator(b.commutator(c))
    nested = b.commutator(a.commutator(c))
    rhs = a.commutator(b).commutator(c) + (nested if sign > 0 else -nested)
    assert lhs == rhs


@given(derivations())
def test_normal_form_round_trip(dv):
    if dv.is_zero:
        return
    r = dv.degree
    k_comps = [dv(Form.function(F.gens[a])) for a in range(2)]
    kpart = VectorValuedForm(F, k_comps, degree=r) if 0 <= r <= 2 else None
    lie_piece = Derivation.lie(kpart) if kpart is not None and not kpart.is_zero else Derivation.zero(F)
    a_comps = [
        dv(Form.coordinate_diff(F, a)) - lie_piece(Form.coordinate_diff(F, a))
        for a in range(2)
    ]
    apart = VectorValuedForm(F, a_comps, degree=r + 1) if 0 <= r + 1 <= 2 else None
    rebuilt = Derivation(F, {r: (kpart, apart)})
    assert rebuilt == dv


@given(derivations(), forms())
def test_basis_coefficients_reproduce_action(dv, a):
    lie_coeffs, ins_coeffs = dv.basis_coefficients()
    out = Form.zero(F)
    for i in range(2):
        basis = VectorField.basis(F, i)
        out = out + lie_coeffs[i].wedge(a.lie_derivative(basis))
        out = out + ins_coeffs[i].wedge(a.insert_basis(i))
    assert out == dv(a)

"""Pseudoriemannian and symplectic structure on a coordinate chart.

A ChartGeometry bundles a metric and a symplectic form (plus an optional
compatibility tensor) and precomputes everything downstream code contracts
against: Christoffel symbols, curvature, the endomorphism J relating the two
structures, musical isomorphisms, and classical Hamiltonian mechanics.
Construction validates symmetry, antisymmetry, closedness and
non-degeneracy, so no degenerate chart ever circulates.
"""

from __future__ import annotations

from fractions import Fraction

from .forms import Derivation, Form, VectorField, VectorValuedForm
from .scalars import RationalFunction, ScalarField, coordinate_field


class ChartError(ValueError):
    """A chart definition violates a structural invariant."""


def matrix_inverse(rows, field: ScalarField):
    """Exact inverse by Gauss-Jordan elimination over the scalar field."""
    n = len(rows)
    work = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero), None)
        if pivot is None:
            raise ChartError("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [entry * inv for entry in work[col]]
        for r in range(n):
            if r == col or work[r][col].is_zero:
                continue
            factor = work[r][col]
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def matrix_det(rows, field: ScalarField) -> RationalFunction:
    n = len(rows)
    work = [list(row) for row in rows]
    det = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        for r in range(col + 1, n):
            if work[r][col].is_zero:
                continue
            factor = work[r][col] / work[col][col]
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return det


class ChartGeometry:
    """A chart with compatible exact pseudoriemannian and symplectic data."""

    def __init__(
        self,
        name: str,
        coords,
        metric,
        symplectic,
        l_tensor=None,
        kahler_expected=None,
        canonical_j=None,
    ):
        field = coordinate_field(coords)
        dim = field.dimension
        if dim % 2:
            raise ChartError(f"chart dimension {dim} is odd; a symplectic form needs an even one")

        self.name = name
        self.field = field
        self.dim = dim
        self.g = tuple(tuple(field.wrap(e) for e in row) for row in metric)
        self.w = tuple(tuple(field.wrap(e) for e in row) for row in symplectic)
        if len(self.g) != dim or any(len(r) != dim for r in self.g):
            raise ChartError("metric is not a dim x dim matrix")
        if len(self.w) != dim or any(len(r) != dim for r in self.w):
            raise ChartError("symplectic matrix is not dim x dim")
        for i in range(dim):
            for j in range(dim):
                if self.g[i][j] != self.g[j][i]:
                    raise ChartError(f"metric entry ({i},{j}) breaks symmetry")
                if self.w[i][j] != -self.w[j][i]:
                    raise ChartError(f"symplectic entry ({i},{j}) breaks antisymmetry")

        self.det_g = matrix_det(self.g, field)
        self.det_w = matrix_det(self.w, field)
        if self.det_g.is_zero:
            raise ChartError("metric is degenerate: det g = 0")
        if self.det_w.is_zero:
            raise ChartError("symplectic matrix is degenerate: det w = 0")
        if not self.omega_form().d().is_zero:
            witness = self.omega_form().d()
            raise ChartError(f"symplectic form is not closed: d(omega) = {witness}")

        if l_tensor is not None:
            l_tensor = tuple(
                tuple(tuple(field.wrap(e) for e in row) for row in slab)
                for slab in l_tensor
            )
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        if l_tensor[i][j][k] != -l_tensor[i][k][j]:
                            raise ChartError(
                                f"compatibility tensor entry ({i},{j},{k}) breaks antisymmetry"
                            )
        self.l_tensor = l_tensor

        self.g_inv = matrix_inverse(self.g, field)
        self.w_inv = matrix_inverse(self.w, field)
        # bivector normalized so that {f,h} = lam^{ab} d_a f d_b h
        self.lam = tuple(tuple(-e for e in row) for row in self.w_inv)

        self.gamma = self._christoffel()
        self.riemann = self._riemann()
        # J e_j = J^b_j e_b with omega(X,Y) = g(JX,Y)
        self.j_matrix = tuple(
            tuple(
                sum((self.g_inv[b][l] * self.w[j][l] for l in range(dim)), field.zero)
                for j in range(dim)
            )
            for b in range(dim)
        )
        self.j_inv = matrix_inverse(self.j_matrix, field)
        self.kahler_expected = kahler_expected
        self.canonical_j = canonical_j
        self._nabla_basis = {}

    # -- construction internals -------------------------------------------

    def _christoffel(self):
        dim, field = self.dim, self.field
        half = Fraction(1, 2)
        gamma = []
        for i in range(dim):
            gi = []
            for j in range(dim):
                gj = []
                for k in range(dim):
                    total = field.zero
                    for m in range(dim):
                        total = total + self.g_inv[i][m] * (
                            self.g[m][k].partial(j)
                            + self.g[m][j].partial(k)
                            - self.g[j][k].partial(m)
                        )
                    gj.append(total * half)
                gi.append(tuple(gj))
            gamma.append(tuple(gi))
        return tuple(gamma)

    def _riemann(self):
        # R^i_{juv}: coefficient of e_i in R(e_u, e_v) e_j
        dim, field = self.dim, self.field
        out = []
        for i in range(dim):
            bi = []
            for j in range(dim):
                bj = []
                for u in range(dim):
                    bu = []
                    for v in range(dim):
                        total = self.gamma[i][v][j].partial(u) - self.gamma[i][u][j].partial(v)
                        for m in range(dim):
                            total = total + (
                                self.gamma[i][u][m] * self.gamma[m][v][j]
                                - self.gamma[i][v][m] * self.gamma[m][u][j]
                            )
                        bu.append(total)
                    bj.append(tuple(bu))
                bi.append(tuple(bj))
            out.append(tuple(bi))
        return tuple(out)

    # -- tensor evaluation ---------------------------------------------------

    def metric_eval(self, x: VectorField, y: VectorField) -> RationalFunction:
        total = self.field.zero
        for i in range(self.dim):
            for j in range(self.dim):
                total = total + self.g[i][j] * x.components[i] * y.components[j]
        return total

    def omega_eval(self, x: VectorField, y: VectorField) -> RationalFunction:
        total = self.field.zero
        for i in range(self.dim):
            for j in range(self.dim):
                total = total + self.w[i][j] * x.components[i] * y.components[j]
        return total

    def cometric_eval(self, lam: Form, mu: Form) -> RationalFunction:
        """g^{-1} on two 1-forms."""
        total = self.field.zero
        for i in range(self.dim):
            for j in range(self.dim):
                total = total + self.g_inv[i][j] * lam.coefficient((i,)) * mu.coefficient((j,))
        return total

    def omega_form(self) -> Form:
        terms = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not self.w[i][j].is_zero:
                    terms[(i, j)] = self.w[i][j]
        return Form(self.field, terms)

    def metric_row_form(self, x: VectorField) -> Form:
        """The 1-form g(X, _)."""
        coeffs = {}
        for j in range(self.dim):
            c = self.field.zero
            for i in range(self.dim):
                c = c + self.g[i][j] * x.components[i]
            if not c.is_zero:
                coeffs[(j,)] = c
        return Form(self.field, coeffs)

    def omega_row_form(self, x: VectorField) -> Form:
        """The 1-form omega(X, _)."""
        coeffs = {}
        for j in range(self.dim):
            c = self.field.zero
            for i in range(self.dim):
                c = c + self.w[i][j] * x.components[i]
            if not c.is_zero:
                coeffs[(j,)] = c
        return Form(self.field, coeffs)

    # -- musical isomorphisms --------------------------------------------

    def flat(self, x: VectorField) -> Form:
        return self.metric_row_form(x)

    def sharp(self, one_form: Form) -> VectorField:
        if not one_form.is_homogeneous(1):
            raise ChartError("sharp needs a 1-form")
        comps = []
        for i in range(self.dim):
            c = self.field.zero
            for j in range(self.dim):
                c = c + self.g_inv[i][j] * one_form.coefficient((j,))
            comps.append(c)
        return VectorField(self.field, comps)

    # -- J ------------------------------------------------------------------

    def j_apply(self, x: VectorField) -> VectorField:
        comps = []
        for b in range(self.dim):
            c = self.field.zero
            for j in range(self.dim):
                c = c + self.j_matrix[b][j] * x.components[j]
            comps.append(c)
        return VectorField(self.field, comps)

    def j_vvform(self) -> VectorValuedForm:
        """J as a vector-valued 1-form dx^j (x) J e_j."""
        comps = []
        for b in range(self.dim):
            coeffs = {}
            for j in range(self.dim):
                if not self.j_matrix[b][j].is_zero:
                    coeffs[(j,)] = self.j_matrix[b][j]
            comps.append(Form(self.field, coeffs))
        return VectorValuedForm(self.field, comps, degree=1)

    def apply_endo(self, matrix, vvform: VectorValuedForm) -> VectorValuedForm:
        """Apply an endomorphism matrix to the vector slot, componentwise."""
        comps = []
        for b in range(self.dim):
            total = Form.zero(self.field)
            for j in range(self.dim):
                total = total + vvform.components[j] * matrix[b][j]
            comps.append(total)
        return VectorValuedForm(self.field, comps, degree=vvform.degree)

    def j_square_scalar(self):
        """+1 or -1 when J^2 is that multiple of the identity, else None."""
        sign = None
        for b in range(self.dim):
            for j in range(self.dim):
                total = self.field.zero
                for m in range(self.dim):
                    total = total + self.j_matrix[b][m] * self.j_matrix[m][j]
                if b != j:
                    if not total.is_zero:
                        return None
                    continue
                if total == self.field.one:
                    here = 1
                elif total == -self.field.one:
                    here = -1
                else:
                    return None
                if sign is None:
                    sign = here
                elif sign != here:
                    return None
        return sign

    # -- curvature ------------------------------------------------------------

    def riemann4(self, u: int, v: int, w: int, z: int) -> RationalFunction:
        """The 4-tensor -g(R(e_u, e_v) e_w, e_z)."""
        total = self.field.zero
        for i in range(self.dim):
            total = total + self.riemann[i][w][u][v] * self.g[i][z]
        return -total

    def riemann4_form(self, x: VectorField, y: VectorField) -> Form:
        """The 2-form R4(X, Y, _, _)."""
        terms = {}
        for w in range(self.dim):
            for z in range(w + 1, self.dim):
                c = self.field.zero
                for u in range(self.dim):
                    for v in range(self.dim):
                        c = c + self.riemann4(u, v, w, z) * x.components[u] * y.components[v]
                if not c.is_zero:
                    terms[(w, z)] = c
        return Form(self.field, terms)

    def curvature_endo_form(self, b: int, j: int) -> Form:
        """The 2-form R^b_j = sum_{u<v} R^b_{juv} dx^u wedge dx^v."""
        terms = {}
        for u in range(self.dim):
            for v in range(u + 1, self.dim):
                c = self.riemann[b][j][u][v]
                if not c.is_zero:
                    terms[(u, v)] = c
        return Form(self.field, terms)

    def curvature_apply(self, vvform: VectorValuedForm) -> VectorValuedForm:
        """R(_,_) K: wedge the curvature 2-form into the form slot."""
        comps = []
        for b in range(self.dim):
            total = Form.zero(self.field)
            for j in range(self.dim):
                total = total + self.curvature_endo_form(b, j).wedge(vvform.components[j])
            comps.append(total)
        degree = min(vvform.degree + 2, self.dim)
        return VectorValuedForm(self.field, comps, degree=degree)

    # -- covariant calculus -----------------------------------------------

    def dnabla(self, vvform: VectorValuedForm) -> VectorValuedForm:
        """Exterior covariant derivative on vector-valued forms."""
        comps = []
        for i in range(self.dim):
            total = vvform.components[i].d()
            for j in range(self.dim):
                for k in range(self.dim):
                    coeff = self.gamma[i][j][k]
                    if coeff.is_zero:
                        continue
                    dxj = Form.coordinate_diff(self.field, j)
                    total = total + dxj.wedge(vvform.components[k]) * coeff
            comps.append(total)
        degree = min(vvform.degree + 1, self.dim)
        return VectorValuedForm(self.field, comps, degree=degree)

    def nabla_vector(self, x: VectorField) -> VectorValuedForm:
        """The covariant differential of X, a vector-valued 1-form."""
        return self.dnabla(x.as_vvform())

    def nabla_direction(self, u: VectorField, x: VectorField) -> VectorField:
        """The vector field of covariant derivative of X along U."""
        nx = self.nabla_vector(x)
        return VectorField(
            self.field,
            [c.insert_vector(u).scalar_part() for c in nx.components],
        )

    def nabla_derivation(self, x: VectorField) -> Derivation:
        """The covariant derivative along X as a degree-0 derivation."""
        return Derivation(
            self.field,
            {0: (x.as_vvform(), -self.nabla_vector(x))},
        )

    def nabla_basis(self, a: int) -> Derivation:
        cached = self._nabla_basis.get(a)
        if cached is None:
            cached = self.nabla_derivation(VectorField.basis(self.field, a))
            self._nabla_basis[a] = cached
        return cached

    def covariant_hessian(self, f: RationalFunction):
        """Hess_{ab} = d_a d_b f - Gamma^m_{ab} d_m f (symmetric)."""
        f = self.field.wrap(f)
        hess = []
        for a in range(self.dim):
            row = []
            for b in range(self.dim):
                entry = f.partial(a).partial(b)
                for m in range(self.dim):
                    entry = entry - self.gamma[m][a][b] * f.partial(m)
                row.append(entry)
            hess.append(tuple(row))
        return tuple(hess)

    # -- classical mechanics -----------------------------------------------

    def classical_hamiltonian(self, f: RationalFunction) -> VectorField:
        """The vector field X_f with i_{X_f} omega = df."""
        f = self.field.wrap(f)
        comps = []
        for c in range(self.dim):
            total = self.field.zero
            for b in range(self.dim):
                total = total + self.w_inv[b][c] * f.partial(b)
            comps.append(total)
        return VectorField(self.field, comps)

    def classical_poisson(self, f, h) -> RationalFunction:
        return self.omega_eval(self.classical_hamiltonian(f), self.classical_hamiltonian(h))

    # -- compatibility tensor ----------------------------------------------

    def l_slice(self, x: VectorField) -> Form:
        """The 2-form L(X; _, _)."""
        if self.l_tensor is None:
            raise ChartError(f"chart {self.name} has no compatibility tensor")
        terms = {}
        for j in range(self.dim):
            for k in range(j + 1, self.dim):
                c = self.field.zero
                for i in range(self.dim):
                    c = c + self.l_tensor[i][j][k] * x.components[i]
                if not c.is_zero:
                    terms[(j, k)] = c
        return Form(self.field, terms)

    def __repr__(self):
        return f"ChartGeometry({self.name!r}, dim={self.dim})"


# -- tangent lift -----------------------------------------------------------


def tangent_lift_chart(name: str, base_coords, base_metric) -> ChartGeometry:
    """The tangent-bundle chart of a base chart, para-Kähler by construction.

    Metric from the adapted coframe pairing horizontal and vertical
    directions, symplectic form from the metric Lagrangian, J = -1 on
    horizontal lifts and +1 on vertical lifts.
    """
    base_coords = tuple(base_coords)
    n = len(base_coords)
    base_field = coordinate_field(base_coords)
    vel_coords = tuple("v" if c == "q" else f"v_{c}" for c in base_coords)
    field = coordinate_field(base_coords + vel_coords)

    gbar = [[field.wrap(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            entry = base_metric[i][j]
            if isinstance(entry, RationalFunction):
                entry = entry.transplant(field) if entry.field is base_field else field.wrap(entry)
            else:
                entry = field.wrap(entry)
            gbar[i][j] = entry
    gbar_inv = matrix_inverse(gbar, field)

    # base Christoffels, lifted: only q-partials appear
    half = Fraction(1, 2)
    gam = [
        [
            [
                sum(
                    (
                        gbar_inv[i][m]
                        * (gbar[m][k].partial(j) + gbar[m][j].partial(k) - gbar[j][k].partial(m))
                        for m in range(n)
                    ),
                    field.zero,
                )
                * half
                for k in range(n)
            ]
            for j in range(n)
        ]
        for i in range(n)
    ]

    dim = 2 * n
    vel = [field.coordinate(vc) for vc in vel_coords]

    # symplectic form from the Lagrangian: d( dL/dv^i dq^i ) with L = g_ij v^i v^j / 2
    pot = Form.zero(field)
    for i in range(n):
        coeff = field.zero
        for j in range(n):
            coeff = coeff + gbar[i][j] * vel[j]
        pot = pot + Form.coordinate_diff(field, i) * coeff
    omega_l = pot.d()
    w = [[field.zero] * dim for _ in range(dim)]
    for a in range(dim):
        for b in range(a + 1, dim):
            c = omega_l.coefficient((a, b))
            w[a][b] = c
            w[b][a] = -c

    # metric from the adapted coframe: theta^i = dq^i, eta^i = dv^i + Gam^i_{jk} v^j dq^k
    gh = [[field.zero] * dim for _ in range(dim)]
    for a in range(n):
        for b in range(n):
            total = field.zero
            for i in range(n):
                for k in range(n):
                    total = total + gbar[a][i] * gam[i][k][b] * vel[k]
                    total = total + gbar[i][b] * gam[i][k][a] * vel[k]
            gh[a][b] = total
    for a in range(n):
        for b in range(n):
            gh[a][n + b] = gbar[a][b]
            gh[n + a][b] = gbar[b][a]

    # canonical almost product structure: J(vertical) = +, J(horizontal) = -
    jc = [[field.zero] * dim for _ in range(dim)]
    for a in range(n):
        jc[a][a] = -field.one
        jc[n + a][n + a] = field.one
        for jdx in range(n):
            coeff = field.zero
            for k in range(n):
                coeff = coeff + 2 * gam[jdx][a][k] * vel[k]
            jc[n + jdx][a] = coeff

    return ChartGeometry(
        name,
        base_coords + vel_coords,
        gh,
        w,
        kahler_expected=False,
        canonical_j=tuple(tuple(row) for row in jc),
    )


# -- built-in chart library ---------------------------------------------------


def _flat2() -> ChartGeometry:
    field = coordinate_field(("x", "y"))
    one, zero = field.one, field.zero
    return ChartGeometry(
        "flat2",
        ("x", "y"),
        [[one, zero], [zero, one]],
        [[zero, one], [-one, zero]],
        kahler_expected=True,
    )


def _flat4() -> ChartGeometry:
    field = coordinate_field(("x1", "x2", "x3", "x4"))
    o, z = field.one, field.zero
    g = [
        [z, z, o, z],
        [z, z, z, o],
        [o, z, z, z],
        [z, o, z, z],
    ]
    w = [
        [z, z, o, z],
        [z, z, z, o],
        [-o, z, z, z],
        [z, -o, z, z],
    ]
    return ChartGeometry("flat4", ("x1", "x2", "x3", "x4"), g, w, kahler_expected=False)


def _sphere2() -> ChartGeometry:
    field = coordinate_field(("x", "y"))
    x, y = field.gens
    conf = 4 / (1 + x**2 + y**2) ** 2
    zero = field.zero
    return ChartGeometry(
        "sphere2",
        ("x", "y"),
        [[conf, zero], [zero, conf]],
        [[zero, conf], [-conf, zero]],
        kahler_expected=True,
    )


def _halfplane() -> ChartGeometry:
    field = coordinate_field(("x", "y"))
    x, y = field.gens
    conf = 1 / y**2
    zero = field.zero
    return ChartGeometry(
        "halfplane",
        ("x", "y"),
        [[conf, zero], [zero, conf]],
        [[zero, conf], [-conf, zero]],
        kahler_expected=True,
    )


def _tlift1() -> ChartGeometry:
    base = coordinate_field(("q",))
    return tangent_lift_chart("tlift1", ("q",), [[base.one]])


def _tlift1q() -> ChartGeometry:
    base = coordinate_field(("q",))
    q = base.gens[0]
    return tangent_lift_chart("tlift1q", ("q",), [[1 + q**2]])


_BUILTINS = {
    "flat2": _flat2,
    "flat4": _flat4,
    "sphere2": _sphere2,
    "halfplane": _halfplane,
    "tlift1": _tlift1,
    "tlift1q": _tlift1q,
}


def builtin_chart(name: str) -> ChartGeometry:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ChartError(
            f"unknown built-in chart {name!r}; available: {', '.join(sorted(_BUILTINS))}"
        ) from None
    return factory()


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)

"""Round trip between odd skew pencils and their apolar dual forms."""

import pytest

from skewlab import (
    GF,
    QQ,
    DegenerateForm,
    DegenerateInput,
    GenericityError,
    GradedSlice,
    HomogPoly,
    RangeError,
    SplitMix64,
    UsageError,
    congruence_transport,
    d_vars,
    dim_homog,
    form_to_matrix,
    hilbert_function,
    matrix_to_form,
    parse_poly,
    slices_equal,
    sub_pfaffians,
    y_vars,
)
from skewlab.randomness import (
    random_invertible,
    random_nondegenerate_dual_form,
    random_skew_linear,
)
from skewlab.skew import skew_linear


def seeded_pencil(n, field, seed):
    return skew_linear(random_skew_linear(n, 3, field, SplitMix64(seed)))


def pf_slice(pm):
    pfs, _ = sub_pfaffians(pm, check=False)
    return GradedSlice.from_polys(pfs)


def test_matrix_to_form_produces_checked_certificate():
    pm = seeded_pencil(5, GF(32003), 1)
    form, cert = matrix_to_form(pm)
    assert form.alphabet == d_vars() and form.degree == 2
    assert form == form.leading_normalized()
    assert cert.ok and cert.direction == "matrix-to-form"
    assert cert.hilbert == (1, 3, 1)
    assert cert.cat_rank == 3
    assert set(cert.checks) == {
        "annihilator_dim",
        "generators_match_annihilator",
        "hilbert_symmetric",
        "hilbert_maximal",
        "socle_dim",
        "perp_full_above_degree",
    }
    assert cert.ideal_slice.dim == 5
    assert hilbert_function(form) == (1, 3, 1)


def test_roundtrip_matrix_form_matrix():
    for n in (5, 7):
        pm = seeded_pencil(n, GF(32003), 10 + n)
        form, _ = matrix_to_form(pm)
        back, cert = form_to_matrix(form)
        assert cert.ok
        assert slices_equal(pf_slice(pm), pf_slice(back))
        form2, _ = matrix_to_form(back)
        assert form2 == form


def test_roundtrip_form_matrix_form():
    rng = SplitMix64(77)
    form = random_nondegenerate_dual_form(4, GF(32003), rng).leading_normalized()
    pm, cert = form_to_matrix(form)
    assert cert.ok and cert.direction == "form-to-matrix"
    assert pm.nrows == 7 and is_linear_skew(pm)
    recovered, _ = matrix_to_form(pm)
    assert recovered == form


def is_linear_skew(pm):
    from skewlab import is_skew_matrix

    return pm.degree == 1 and is_skew_matrix(pm)


def test_roundtrip_over_rationals():
    pm = seeded_pencil(5, QQ, 4)
    form, cert = matrix_to_form(pm)
    assert cert.ok
    back, cert2 = form_to_matrix(form)
    assert cert2.ok
    assert slices_equal(pf_slice(pm), pf_slice(back))


def test_certificate_json_shape():
    pm = seeded_pencil(5, GF(32003), 6)
    _, cert = matrix_to_form(pm)
    obj = cert.to_json()
    assert obj["ok"] is True and obj["n"] == 5
    assert obj["hilbert"] == [1, 3, 1]
    assert set(obj["checks"]) == set(cert.checks)


def test_matrix_to_form_guards():
    with pytest.raises(UsageError):
        matrix_to_form(seeded_pencil(4, GF(32003), 1))  # even order
    with pytest.raises(UsageError):
        matrix_to_form(seeded_pencil(3, GF(32003), 1))  # too small
    with pytest.raises(UsageError):
        matrix_to_form(skew_linear(random_skew_linear(5, 4, GF(32003), SplitMix64(1))))
    with pytest.raises(UsageError):
        matrix_to_form(seeded_pencil(7, GF(3), 1))  # characteristic too small


def test_matrix_to_form_rejects_degenerate_span():
    # every entry a multiple of y0: sub-Pfaffians span a line, not n dims
    y0 = HomogPoly.variable(y_vars(), 0, QQ)
    zero = HomogPoly.zero(y_vars(), 1, QQ)
    grid = [[zero] * 5 for _ in range(5)]
    scale = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23]
    k = 0
    for i in range(5):
        for j in range(i + 1, 5):
            grid[i][j] = y0.scale(scale[k])
            grid[j][i] = -grid[i][j]
            k += 1
    with pytest.raises(DegenerateInput):
        matrix_to_form(skew_linear(grid))


def test_form_to_matrix_guards():
    with pytest.raises(UsageError):
        form_to_matrix(parse_poly("y0^2", y_vars(), QQ))  # wrong alphabet
    with pytest.raises(RangeError):
        form_to_matrix(parse_poly("d0", d_vars(), QQ))  # odd degree, n even
    with pytest.raises(GenericityError):
        form_to_matrix(parse_poly("0", d_vars(), QQ, degree=2))


def test_form_to_matrix_rejects_degenerate_form():
    # d0^4 has a 9-dimensional annihilator in degree 3, not 7
    with pytest.raises(DegenerateForm):
        form_to_matrix(parse_poly("d0^4", d_vars(), QQ))


def test_congruence_transport_preserves_the_form():
    field = GF(32003)
    pm = seeded_pencil(7, field, 21)
    rng = SplitMix64(22)
    moved = congruence_transport(pm, random_invertible(7, field, rng))
    form_a, _ = matrix_to_form(pm)
    form_b, cert = matrix_to_form(moved)
    assert cert.ok
    assert form_a == form_b

# Exact Hermitian spaces: scalar grammar, star-symmetric forms with a
# positivity certificate, echelon-canonical subspaces, and the two-route
# Sasaki map on lines.  Everything here is exact rational arithmetic, so
# every equality assertion is literal, never approximate.

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orthokit import (
    AnisotropyError,
    DimensionMismatchError,
    GaussianRational,
    InputError,
    NotHermitianError,
    ScalarSyntaxError,
    contains,
    format_scalar,
    format_vector,
    full_subspace,
    fuzz_hermitian,
    inner,
    intersect_subspaces,
    line,
    line_subspace,
    make_space,
    orthogonal_lines,
    parse_scalar,
    parse_vector,
    perp_subspace,
    project,
    sample_orthoset,
    sasaki_line,
    star,
    subspace,
    sum_subspaces,
    zero_subspace,
)


def gaussians():
    fr = st.fractions(min_value=-9, max_value=9, max_denominator=9)
    return st.builds(GaussianRational, fr, fr)


# ------------------------------------------------------ Gaussian arithmetic


@given(gaussians(), gaussians(), gaussians())
def test_gaussian_ring_laws(a, b, c):
    # commutativity, associativity, distributivity
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(gaussians(), gaussians())
def test_gaussian_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@given(gaussians(), gaussians())
def test_gaussian_division_inverts_multiplication(a, b):
    if b:
        assert (a * b) / b == a
        assert (a / b) * b == a


@given(gaussians())
def test_gaussian_norm_is_conjugate_product(a):
    n = a * a.conjugate()
    assert n.im == 0 and n.re == a.re * a.re + a.im * a.im


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(Fraction(1), Fraction(0)) / GaussianRational(
            Fraction(0), Fraction(0)
        )


def test_gaussian_mixes_with_ints_and_fractions():
    i = GaussianRational(Fraction(0), Fraction(1))
    assert 1 + i == GaussianRational(Fraction(1), Fraction(1))
    assert 2 * i == GaussianRational(Fraction(0), Fraction(2))
    assert i - Fraction(1, 2) == GaussianRational(Fraction(-1, 2), Fraction(1))
    assert i * i == -1


# ----------------------------------------------------------- scalar grammar


GRAMMAR_TABLE = [
    ("3", Fraction(3)),
    ("-3/4", Fraction(-3, 4)),
    ("0", Fraction(0)),
    ("1/2+5/3i", GaussianRational(Fraction(1, 2), Fraction(5, 3))),
    ("2-i", GaussianRational(Fraction(2), Fraction(-1))),
    ("i", GaussianRational(Fraction(0), Fraction(1))),
    ("-i", GaussianRational(Fraction(0), Fraction(-1))),
    ("3i", GaussianRational(Fraction(0), Fraction(3))),
    ("-1/2i", GaussianRational(Fraction(0), Fraction(-1, 2))),
    ("-2/3+i", GaussianRational(Fraction(-2, 3), Fraction(1))),
]


def test_scalar_grammar_parses_and_round_trips():
    for text, value in GRAMMAR_TABLE:
        parsed = parse_scalar(text, "Qi")
        if isinstance(value, Fraction):
            assert parsed == GaussianRational(value, Fraction(0))
        else:
            assert parsed == value
        # canonical formatting round-trips through the parser
        assert parse_scalar(format_scalar(parsed), "Qi") == parsed


def test_rational_field_parses_fractions_only():
    assert parse_scalar(" 7/2 ", "Q") == Fraction(7, 2)
    assert format_scalar(Fraction(-7, 2)) == "-7/2"
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("i", "Q")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("1+i", "Q")


def test_scalar_grammar_rejects_junk():
    for bad in ["", "1+", "i2", "1//2", "1.5", "+", "1 + i", "2i+1", "i+i"]:
        with pytest.raises(ScalarSyntaxError):
            parse_scalar(bad, "Qi")


def test_unknown_field_rejected():
    with pytest.raises(InputError):
        parse_scalar("1", "R")
    with pytest.raises(InputError):
        make_space([["1"]], "C")


def test_star_is_identity_on_rationals_and_conjugation_on_gaussians():
    assert star(Fraction(3, 4)) == Fraction(3, 4)
    assert star(parse_scalar("1+2i", "Qi")) == parse_scalar("1-2i", "Qi")


# -------------------------------------------------------- space validation


def test_make_space_accepts_identity_and_strings():
    sp = make_space([["1", "0"], ["0", "2"]], "Q")
    assert sp.dim == 2 and sp.gram[1][1] == Fraction(2)


def test_make_space_rejects_nonsymmetric_rational_gram():
    with pytest.raises(NotHermitianError):
        make_space([["1", "2"], ["3", "1"]], "Q")


def test_make_space_rejects_non_star_symmetric_gaussian_gram():
    # the (1,0) entry must be the conjugate -i of the (0,1) entry i
    with pytest.raises(NotHermitianError):
        make_space([["1", "i"], ["i", "1"]], "Qi")


def test_make_space_rejects_negative_and_indefinite_forms():
    with pytest.raises(AnisotropyError):
        make_space([["-1"]], "Q")
    # leading minors 1 then -3: positive-definiteness fails at order two
    with pytest.raises(AnisotropyError):
        make_space([["1", "2"], ["2", "1"]], "Q")
    with pytest.raises(AnisotropyError):
        make_space([["1", "2i"], ["-2i", "1"]], "Qi")


def test_make_space_rejects_ragged_or_empty_gram():
    with pytest.raises(DimensionMismatchError):
        make_space([], "Q")
    with pytest.raises(DimensionMismatchError):
        make_space([["1", "0"]], "Q")


def test_gaussian_scalar_rejected_in_rational_space():
    with pytest.raises(InputError):
        make_space([[GaussianRational(Fraction(1), Fraction(1))]], "Q")


# ------------------------------------------------------------- inner form


def demo_space():
    # anisotropic Gaussian form in dimension three; minors 1, 2, 2*2-1 = 3
    return make_space(
        [["1", "0", "0"], ["0", "2", "i"], ["0", "-i", "2"]], "Qi"
    )


def test_inner_is_star_symmetric_and_linear():
    sp = demo_space()
    x = parse_vector(["1", "i", "0"], sp)
    y = parse_vector(["2", "0", "1-i"], sp)
    z = parse_vector(["0", "1", "1"], sp)
    assert inner(sp, x, y) == star(inner(sp, y, x))
    lhs = inner(sp, tuple(a + b for a, b in zip(x, y)), z)
    assert lhs == inner(sp, x, z) + inner(sp, y, z)
    two = parse_scalar("2i", "Qi")
    assert inner(sp, tuple(two * a for a in x), z) == two * inner(sp, x, z)
    # star-linearity in the second slot
    assert inner(sp, x, tuple(two * a for a in z)) == star(two) * inner(sp, x, z)


def test_inner_positive_on_sampled_nonzero_vectors():
    sp = demo_space()
    for entries in [["1", "0", "0"], ["1", "i", "-1"], ["0", "1/2", "i"]]:
        v = parse_vector(entries, sp)
        ip = inner(sp, v, v)
        assert ip.im == 0 and ip.re > 0


# ------------------------------------------------------------- subspaces


def test_subspace_reduction_is_canonical():
    sp = demo_space()
    s1 = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    # a different spanning set of the same plane reduces to the same basis
    s2 = subspace(sp, [["1", "1", "0"], ["2", "-1", "0"], ["3", "0", "0"]])
    assert s1 == s2
    assert s1.dim == 2


def test_containment_sum_intersection():
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    t = subspace(sp, [["0", "1", "0"], ["0", "0", "1"]])
    assert contains(s, parse_vector(["3", "-2i", "0"], sp))
    assert not contains(s, parse_vector(["0", "0", "1"], sp))
    assert sum_subspaces(s, t) == full_subspace(sp)
    meet = intersect_subspaces(s, t)
    assert meet.dim == 1
    assert format_vector(meet.basis[0]) == ["0", "1", "0"]


def test_perp_of_plane_matches_hand_computation():
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    p = perp_subspace(sp, s)
    assert p.dim == 1
    # inner(x, e2) = 2*x1 - i*x2 = 0 forces x = (0, 1, -2i) up to scale
    assert format_vector(p.basis[0]) == ["0", "1", "-2i"]
    # perp is a complement in an anisotropic space
    assert sum_subspaces(s, p) == full_subspace(sp)
    assert intersect_subspaces(s, p) == zero_subspace(sp)
    # double perp returns the subspace itself
    assert perp_subspace(sp, p) == s


def test_projection_is_idempotent_and_self_adjoint():
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    x = parse_vector(["1", "1", "1"], sp)
    y = parse_vector(["i", "0", "2"], sp)
    px = project(sp, s, x)
    assert contains(s, px)
    assert project(sp, s, px) == px
    assert inner(sp, px, y) == inner(sp, x, project(sp, s, y))
    # projecting onto the zero subspace kills everything
    assert project(sp, zero_subspace(sp), x) == sp.zero_vector()


# ------------------------------------------------------------ Sasaki lines


def test_sasaki_line_worked_example():
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    img1 = sasaki_line(sp, s, line(sp, ["1", "1", "1"]))
    assert format_vector(img1.rep) == ["1", "1-1/2i", "0"]
    img2 = sasaki_line(sp, s, line(sp, ["1", "0", "6"]))
    assert format_vector(img2.rep) == ["1", "-3i", "0"]
    # lines already inside the subspace are fixed
    inside = line(sp, ["1", "2i", "0"])
    assert sasaki_line(sp, s, inside).rep == inside.rep


def test_sasaki_line_rejects_orthogonal_line():
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    with pytest.raises(InputError):
        sasaki_line(sp, s, line(sp, ["0", "1", "-2i"]))


def test_sasaki_line_adjointness_on_demo_plane():
    # images under the map to s satisfy: image(x) orth y iff x orth image(y)
    sp = demo_space()
    s = subspace(sp, [["1", "0", "0"], ["0", "1", "0"]])
    pts = [
        line(sp, ["1", "1", "1"]),
        line(sp, ["1", "0", "6"]),
        line(sp, ["1", "i", "i"]),
    ]
    imgs = [sasaki_line(sp, s, p) for p in pts]
    for a in range(len(pts)):
        for b in range(len(pts)):
            assert orthogonal_lines(imgs[a], pts[b]) == orthogonal_lines(
                pts[a], imgs[b]
            )


def test_line_rejects_zero_vector_and_normalizes():
    sp = demo_space()
    with pytest.raises(InputError):
        line(sp, ["0", "0", "0"])
    ln = line(sp, ["0", "2i", "-4"])
    assert format_vector(ln.rep) == ["0", "1", "2i"]
    assert line_subspace(ln).dim == 1


# ---------------------------------------------------------- line orthosets


def test_sample_orthoset_of_standard_basis_is_complete_graph():
    sp = make_space([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "Q")
    lines = [
        line(sp, ["1", "0", "0"]),
        line(sp, ["0", "1", "0"]),
        line(sp, ["0", "0", "1"]),
    ]
    x = sample_orthoset(sp, lines)
    assert x.n == 3
    assert all(x.orthogonal(i, j) for i in range(3) for j in range(3) if i != j)


def test_sample_orthoset_rejects_duplicate_lines():
    sp = make_space([["1", "0"], ["0", "1"]], "Q")
    with pytest.raises(InputError):
        sample_orthoset(sp, [line(sp, ["1", "0"]), line(sp, ["2", "0"])])


# ------------------------------------------------------------------- fuzz


def test_fuzz_smoke_both_fields():
    for field in ("Q", "Qi"):
        report = fuzz_hermitian(field, 25, seed=0)
        assert report.ok, report.failures
        assert report.instances == 25
        assert report.checks and all(v > 0 for v in report.checks.values())


def test_fuzz_is_deterministic():
    r1 = fuzz_hermitian("Q", 10, seed=7)
    r2 = fuzz_hermitian("Q", 10, seed=7)
    assert r1.checks == r2.checks and r1.failures == r2.failures

from fractions import Fraction as F

import pytest

from e3geo.ast import (
    AngleDeg,
    Clause,
    Congruent,
    Length,
    Literal,
    MetricCmp,
    ObjectEq,
    PredAtom,
    RightAngle,
    Sort,
    Sum,
    Var,
)
from e3geo.oracle import (
    UNDEFINED,
    CoordModel,
    SqrtSum,
    eval_clauses,
    eval_literal,
    line_through,
)

P = Sort.POINT


def pt(name):
    return Var(name, P)


def lit(name, *args):
    return Literal(False, PredAtom(name, tuple(args)))


def model(points=None, lines=None, circles=None):
    return CoordModel(points or {}, lines or {}, circles or {})


# -- exact sqrt-sum arithmetic ----------------------------------------------


def test_sqrt_sum_combines_equal_radicals():
    s = SqrtSum.of_sqrt(F(8)) - SqrtSum.of_sqrt(F(2)) - SqrtSum.of_sqrt(F(2))
    assert s.sign() == 0


def test_sqrt_sum_strict_inequality():
    assert (SqrtSum.of_sqrt(F(2)) + SqrtSum.of_sqrt(F(3)) - SqrtSum.of_sqrt(F(10))).sign() == -1
    assert (SqrtSum.of_sqrt(F(2)) + SqrtSum.of_sqrt(F(3)) - SqrtSum.of_sqrt(F(9))).sign() == 1


def test_sqrt_sum_three_terms():
    # sqrt(2) + sqrt(8) = 3 sqrt(2) > sqrt(17)
    s = SqrtSum.of_sqrt(F(2)) + SqrtSum.of_sqrt(F(8)) - SqrtSum.of_sqrt(F(17))
    assert s.sign() == 1


# -- predicate evaluation -----------------------------------------------------


def test_distinct_points_on_line():
    m = model(
        points={"a": (F(0), F(0)), "b": (F(1), F(0))},
        lines={"L": (F(0), F(1), F(0))},  # y = 0
    )
    assert eval_literal(m, lit("distinctPointsOnLine", pt("a"), pt("b"), Var("L", Sort.LINE))) is True


def test_between_strict_order():
    m = model(points={"a": (F(0), F(0)), "b": (F(2), F(0)), "c": (F(1), F(0))})
    assert eval_literal(m, lit("between", pt("a"), pt("c"), pt("b"))) is True
    assert eval_literal(m, lit("between", pt("a"), pt("b"), pt("c"))) is False
    assert eval_literal(m, lit("between", pt("a"), pt("a"), pt("b"))) is False


def test_circle_circle_intersection_by_discriminant():
    # unit circles centered (0,0) and (1,0): centre gap 1 < 2 = r1+r2, > 0
    m = model(
        points={},
        circles={"α": ((F(0), F(0)), F(1)), "β": ((F(1), F(0)), F(1))},
    )
    al, be = Var("α", Sort.CIRCLE), Var("β", Sort.CIRCLE)
    assert eval_literal(m, lit("circleIntersectsCircle", al, be)) is True
    # concentric circles do not cross
    m2 = model(circles={"α": ((F(0), F(0)), F(1)), "β": ((F(0), F(0)), F(4))})
    assert eval_literal(m2, lit("circleIntersectsCircle", al, be)) is False
    # tangent circles do not properly cross
    m3 = model(circles={"α": ((F(0), F(0)), F(1)), "β": ((F(2), F(0)), F(1))})
    assert eval_literal(m3, lit("circleIntersectsCircle", al, be)) is False


def test_same_side_strict_signs():
    m = model(
        points={"a": (F(1), F(1)), "b": (F(2), F(3)), "c": (F(1), F(-1)), "o": (F(0), F(0))},
        lines={"L": (F(0), F(1), F(0))},
    )
    L = Var("L", Sort.LINE)
    assert eval_literal(m, lit("sameSide", pt("a"), pt("b"), L)) is True
    assert eval_literal(m, lit("sameSide", pt("a"), pt("c"), L)) is False
    assert eval_literal(m, lit("sameSide", pt("a"), pt("o"), L)) is False  # o on L


def test_length_comparisons_exact():
    m = model(points={"a": (F(0), F(0)), "b": (F(1), F(1)), "c": (F(2), F(0))})
    eq = Literal(False, MetricCmp("=", Length(pt("a"), pt("b")), Length(pt("b"), pt("c"))))
    assert eval_literal(m, eq) is True  # both sqrt(2)
    lt = Literal(False, MetricCmp("<", Length(pt("a"), pt("b")), Length(pt("a"), pt("c"))))
    assert eval_literal(m, lt) is True  # sqrt2 < 2


def test_between_additivity_of_lengths():
    m = model(points={"a": (F(0), F(0)), "b": (F(1), F(1)), "c": (F(3), F(3))})
    s = Literal(
        False,
        MetricCmp("=", Sum((Length(pt("a"), pt("b")), Length(pt("b"), pt("c")))), Length(pt("a"), pt("c"))),
    )
    assert eval_literal(m, s) is True


def test_right_angle_by_dot_product():
    m = model(points={"a": (F(1), F(0)), "b": (F(0), F(0)), "c": (F(0), F(2))})
    ra = Literal(False, MetricCmp("=", AngleDeg(pt("a"), pt("b"), pt("c")), RightAngle()))
    assert eval_literal(m, ra) is True
    m2 = model(points={"a": (F(1), F(0)), "b": (F(0), F(0)), "c": (F(1), F(2))})
    assert eval_literal(m2, ra) is False


def test_angle_equality_via_cosines():
    m = model(
        points={
            "a": (F(1), F(0)), "b": (F(0), F(0)), "c": (F(1), F(1)),
            "d": (F(2), F(0)), "e": (F(2), F(2)),
        }
    )
    eq = Literal(
        False,
        MetricCmp("=", AngleDeg(pt("a"), pt("b"), pt("c")), AngleDeg(pt("d"), pt("b"), pt("e"))),
    )
    assert eval_literal(m, eq) is True


def test_general_angle_value_is_undefined():
    m = model(points={"a": (F(1), F(0)), "b": (F(0), F(0)), "c": (F(1), F(1))})
    odd = Literal(False, MetricCmp("=", AngleDeg(pt("a"), pt("b"), pt("c")), Length(pt("a"), pt("b"))))
    assert eval_literal(m, odd) is UNDEFINED


def test_flat_angle_sum_comparison():
    m = model(points={"a": (F(-1), F(0)), "b": (F(0), F(0)), "c": (F(1), F(0))})
    flat = Literal(
        False,
        MetricCmp("=", AngleDeg(pt("a"), pt("b"), pt("c")), Sum((RightAngle(), RightAngle()))),
    )
    assert eval_literal(m, flat) is True


def test_angle_sum_pair_below_two_right_angles():
    m = model(points={"a": (F(0), F(1)), "b": (F(0), F(0)), "c": (F(3), F(0)), "d": (F(3), F(1))})
    s = Literal(
        False,
        MetricCmp(
            "<",
            Sum((AngleDeg(pt("a"), pt("b"), pt("c")), AngleDeg(pt("b"), pt("c"), pt("d")))),
            Sum((RightAngle(), RightAngle())),
        ),
    )
    assert eval_literal(m, s) is False  # two right angles exactly
    m2 = model(points={"a": (F(1), F(2)), "b": (F(0), F(0)), "c": (F(3), F(0)), "d": (F(2), F(2))})
    assert eval_literal(m2, s) is True


def test_congruent_atom_via_rigid_motion():
    m = model(
        points={
            "a": (F(0), F(0)), "b": (F(2), F(0)), "c": (F(0), F(1)),
            "d": (F(5), F(0)), "e": (F(5), F(2)), "f": (F(4), F(0)),
        }
    )
    atom = Congruent((pt("a"), pt("b"), pt("c")), (pt("d"), pt("e"), pt("f")))
    assert eval_literal(m, Literal(False, atom)) is True


def test_unbound_name_raises():
    from e3geo.oracle import UnboundName

    with pytest.raises(UnboundName):
        eval_literal(model(), lit("between", pt("a"), pt("b"), pt("c")))


def test_line_equality_up_to_scaling():
    m = model(
        lines={"L": (F(1), F(1), F(-2)), "M": (F(2), F(2), F(-4)), "N": (F(1), F(0), F(0))}
    )
    L, M, N = (Var(n, Sort.LINE) for n in "LMN")
    assert eval_literal(m, Literal(False, ObjectEq(L, M))) is True
    assert eval_literal(m, Literal(False, ObjectEq(L, N))) is False


def test_clause_three_valued_logic():
    m = model(points={"a": (F(0), F(0)), "b": (F(1), F(0)), "c": (F(2), F(0))})
    true_lit = lit("between", pt("a"), pt("b"), pt("c"))
    undef_lit = Literal(
        False, MetricCmp("=", AngleDeg(pt("a"), pt("b"), pt("c")), Length(pt("a"), pt("b")))
    )
    assert eval_clauses(m, [Clause.of(true_lit, undef_lit)]) is True
    assert eval_clauses(m, [Clause.of(undef_lit)]) is UNDEFINED

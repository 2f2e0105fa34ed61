"""Independent Cartesian reference model over exact rational coordinates.

Points are rational pairs, lines are Ax+By+C=0 with (A,B) != (0,0), circles
carry a center and a positive squared radius.  Every literal of the language
is evaluated exactly; where a truth value would require comparing general
irrational angle measures the evaluator answers Undefined instead of
guessing.  `fuzz_rule` samples models satisfying a rule's premises and hunts
for postcondition violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Sequence

from .ast import (
    AngleDeg,
    Area,
    Atom,
    Clause,
    Congruent,
    Const,
    Falsum,
    Length,
    Literal,
    MetricCmp,
    MetricTerm,
    ObjectEq,
    PredAtom,
    Product,
    Quotient,
    RightAngle,
    Similar,
    Sort,
    Sum,
    Var,
)
from .sugar import sugar_body

Pt = tuple[Fraction, Fraction]
LineCoef = tuple[Fraction, Fraction, Fraction]


class Undefined:
    """Verdict for literals the exact evaluator refuses to decide."""

    _instance: Optional["Undefined"] = None

    def __new__(cls) -> "Undefined":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        raise TypeError("Undefined has no truth value")


UNDEFINED = Undefined()


class UnboundName(KeyError):
    pass


@dataclass(frozen=True)
class CoordModel:
    points: dict[str, Pt]
    lines: dict[str, LineCoef] = field(default_factory=dict)
    circles: dict[str, tuple[Pt, Fraction]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, (A, B, _) in self.lines.items():
            if A == 0 and B == 0:
                raise ValueError(f"line {name} has a zero normal")
        for name, (_, r2) in self.circles.items():
            if r2 <= 0:
                raise ValueError(f"circle {name} has non-positive squared radius")

    def point(self, name: str) -> Pt:
        try:
            return self.points[name]
        except KeyError:
            raise UnboundName(name)

    def line(self, name: str) -> LineCoef:
        try:
            return self.lines[name]
        except KeyError:
            raise UnboundName(name)

    def circle(self, name: str) -> tuple[Pt, Fraction]:
        try:
            return self.circles[name]
        except KeyError:
            raise UnboundName(name)


# ---------------------------------------------------------------------------
# Exact arithmetic on sums of square roots


def _sqrtsum_normalize(terms: Sequence[tuple[Fraction, Fraction]]) -> tuple:
    acc: dict[Fraction, Fraction] = {}
    for q, r in terms:
        if q == 0 or r == 0:
            continue
        if r < 0:
            raise ValueError("negative radicand")
        factor, radicand = _sqrt_decompose(r)
        if radicand == 1:
            q, r = q * factor, Fraction(1)
        else:
            q, r = q * factor, radicand
        acc[r] = acc.get(r, Fraction(0)) + q
    return tuple(sorted(((q, r) for r, q in acc.items() if q != 0), key=lambda t: t[1]))


class SqrtSum:
    """Sum of q_i * sqrt(r_i) with rational q_i, nonnegative rational r_i.

    Rational values use the radicand 1.  Signs are decided exactly by
    recursive squaring; the recursion terminates for the term counts this
    module produces (at most four radicals).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[tuple[Fraction, Fraction]]):
        self.terms = _sqrtsum_normalize(terms)

    @staticmethod
    def of_rational(q: Fraction) -> "SqrtSum":
        return SqrtSum([(q, Fraction(1))])

    @staticmethod
    def of_sqrt(r: Fraction) -> "SqrtSum":
        return SqrtSum([(Fraction(1), r)])

    def __add__(self, other: "SqrtSum") -> "SqrtSum":
        return SqrtSum([*self.terms, *other.terms])

    def __neg__(self) -> "SqrtSum":
        return SqrtSum([(-q, r) for q, r in self.terms])

    def __sub__(self, other: "SqrtSum") -> "SqrtSum":
        return self + (-other)

    def __mul__(self, other: "SqrtSum") -> "SqrtSum":
        out = []
        for q1, r1 in self.terms:
            for q2, r2 in other.terms:
                out.append((q1 * q2, r1 * r2))
        return SqrtSum(out)

    def as_rational(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def inverse(self) -> Optional["SqrtSum"]:
        if len(self.terms) == 1:
            q, r = self.terms[0]
            return SqrtSum([(1 / (q * r), r)])
        if len(self.terms) == 2:
            (q1, r1), (q2, r2) = self.terms
            denom = q1 * q1 * r1 - q2 * q2 * r2
            if denom == 0:
                return None
            conj = SqrtSum([(q1, r1), (-q2, r2)])
            return SqrtSum([(q / denom, r) for q, r in conj.terms])
        return None

    def sign(self, depth: int = 0) -> int:
        if depth > 16:
            raise RecursionError("sqrt-sum sign recursion too deep")
        ts = self.terms
        if not ts:
            return 0
        if all(q > 0 for q, _ in ts):
            return 1
        if all(q < 0 for q, _ in ts):
            return -1
        pos = SqrtSum([(q, r) for q, r in ts if q > 0])
        neg = SqrtSum([(-q, r) for q, r in ts if q < 0])
        diff = pos * pos - neg * neg
        s = diff.sign(depth + 1)
        return s


@lru_cache(maxsize=65536)
def _square_free_split(n: int) -> tuple[int, int]:
    """n = s*s * f with f as square-free as bounded factoring can make it.

    Only square factors with a prime component below ~10^4 are extracted
    (plus whole perfect squares); a coarser radicand never affects sign
    decisions, it just combines fewer syntactically-different radicals.
    """
    if n in (0, 1):
        return (1, n)
    root = isqrt(n)
    if root * root == n:
        return (root, 1)
    s, f, d = 1, 1, 2
    while d * d <= n and d <= 10000:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            s *= d ** (e // 2)
            if e % 2:
                f *= d
        d += 1 if d == 2 else 2
    if n > 1:
        root = isqrt(n)
        if root * root == n:
            s *= root
            n = 1
    return (s, f * n)


def _sqrt_decompose(r: Fraction) -> tuple[Fraction, Fraction]:
    """sqrt(r) = factor * sqrt(radicand) with radicand a square-free integer."""
    if r == 0:
        return (Fraction(0), Fraction(0))
    sn, fn = _square_free_split(r.numerator)
    sd, fd = _square_free_split(r.denominator)
    # sqrt(p/q) = (sn sqrt(fn)) / (sd sqrt(fd)) = (sn / (sd fd)) sqrt(fn fd)
    return (Fraction(sn, sd * fd), Fraction(fn * fd))


# ---------------------------------------------------------------------------
# Geometry helpers


def _sub(p: Pt, q: Pt) -> Pt:
    return (p[0] - q[0], p[1] - q[1])


def _dot(u: Pt, v: Pt) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def _cross(u: Pt, v: Pt) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dist2(p: Pt, q: Pt) -> Fraction:
    d = _sub(p, q)
    return _dot(d, d)


def _line_value(L: LineCoef, p: Pt) -> Fraction:
    A, B, C = L
    return A * p[0] + B * p[1] + C


def line_through(p: Pt, q: Pt) -> LineCoef:
    if p == q:
        raise ValueError("two coincident points do not span a line")
    A = q[1] - p[1]
    B = p[0] - q[0]
    C = -(A * p[0] + B * p[1])
    return (A, B, C)


def line_intersection(L: LineCoef, M: LineCoef) -> Optional[Pt]:
    det = L[0] * M[1] - M[0] * L[1]
    if det == 0:
        return None
    x = (-L[2] * M[1] + M[2] * L[1]) / det
    y = (-L[0] * M[2] + M[0] * L[2]) / det
    return (x, y)


# ---------------------------------------------------------------------------
# Angle comparisons
#
# An angle a:b:c has vertex b.  Its degree measure is generally irrational,
# but every comparison the rulebase needs reduces to exact sign tests on the
# cosine, represented as dot/sqrt(|u|^2 |v|^2).


class _AngleVal:
    """cos(angle) = num / sqrt(den2) with den2 > 0; degenerate when a ray
    collapses (vertex equals an endpoint), in which case comparisons are
    undefined."""

    __slots__ = ("num", "den2", "degenerate")

    def __init__(self, m: CoordModel, a: Var, b: Var, c: Var):
        p, v, q = m.point(a.name), m.point(b.name), m.point(c.name)
        u, w = _sub(p, v), _sub(q, v)
        self.degenerate = u == (0, 0) or w == (0, 0)
        if self.degenerate:
            self.num, self.den2 = Fraction(0), Fraction(1)
        else:
            self.num = _dot(u, w)
            self.den2 = _dot(u, u) * _dot(w, w)

    def cos(self) -> SqrtSum:
        # num / sqrt(den2) == (num/den2) * sqrt(den2)
        return SqrtSum([(self.num / self.den2, self.den2)])

    def sin(self) -> SqrtSum:
        # angles live in [0, 180], so sin >= 0: sqrt(1 - cos^2)
        s2 = Fraction(1) - self.num * self.num / self.den2
        if s2 < 0:
            s2 = Fraction(0)
        return SqrtSum.of_sqrt(s2)


def _angle_atoms(t: MetricTerm) -> list[AngleDeg]:
    if isinstance(t, AngleDeg):
        return [t]
    if isinstance(t, Sum):
        out = []
        for s in t.terms:
            out.extend(_angle_atoms(s))
        return out
    return []


def _contains_angle(t: MetricTerm) -> bool:
    if isinstance(t, AngleDeg):
        return True
    if isinstance(t, (Sum, Product)):
        return any(_contains_angle(s) for s in t.terms)
    if isinstance(t, Quotient):
        return _contains_angle(t.num) or _contains_angle(t.den)
    return False


def _right_angle_units(t: MetricTerm) -> Optional[int]:
    """t as k * rightAngle for integer k, else None."""
    if isinstance(t, RightAngle):
        return 1
    if isinstance(t, Const) and t.value == 0:
        return 0
    if isinstance(t, Sum):
        total = 0
        for s in t.terms:
            k = _right_angle_units(s)
            if k is None:
                return None
            total += k
        return total
    return None


def eval_term(m: CoordModel, t: MetricTerm):
    """SqrtSum value of an angle-free metric term, or UNDEFINED."""
    if isinstance(t, Length):
        return SqrtSum.of_sqrt(dist2(m.point(t.a.name), m.point(t.b.name)))
    if isinstance(t, Area):
        p, q, r = (m.point(v.name) for v in (t.a, t.b, t.c))
        return SqrtSum.of_rational(abs(_cross(_sub(q, p), _sub(r, p))) / 2)
    if isinstance(t, Const):
        return SqrtSum.of_rational(t.value)
    if isinstance(t, (RightAngle, AngleDeg)):
        return UNDEFINED
    if isinstance(t, Sum):
        acc = SqrtSum.of_rational(Fraction(0))
        for s in t.terms:
            v = eval_term(m, s)
            if v is UNDEFINED:
                return UNDEFINED
            acc = acc + v
        return acc
    if isinstance(t, Product):
        acc = SqrtSum.of_rational(Fraction(1))
        for s in t.terms:
            v = eval_term(m, s)
            if v is UNDEFINED:
                return UNDEFINED
            acc = acc * v
        return acc
    if isinstance(t, Quotient):
        num, den = eval_term(m, t.num), eval_term(m, t.den)
        if num is UNDEFINED or den is UNDEFINED:
            return UNDEFINED
        inv = den.inverse() if den.terms else None
        if inv is None:
            return UNDEFINED
        return num * inv
    raise TypeError(t)


def _cmp_verdict(sign: int, op: str):
    if op == "=":
        return sign == 0
    if op == "<":
        return sign < 0
    if op == "<=":
        return sign <= 0
    if op == ">":
        return sign > 0
    if op == ">=":
        return sign >= 0
    raise ValueError(op)


def _eval_metric_cmp(m: CoordModel, atom: MetricCmp):
    lhs_ang, rhs_ang = _contains_angle(atom.lhs), _contains_angle(atom.rhs)
    if not lhs_ang and not rhs_ang:
        lv, rv = eval_term(m, atom.lhs), eval_term(m, atom.rhs)
        if lv is UNDEFINED or rv is UNDEFINED:
            return UNDEFINED
        try:
            return _cmp_verdict((lv - rv).sign(), atom.op)
        except (RecursionError, ValueError):
            return UNDEFINED
    return _eval_angle_cmp(m, atom)


def _eval_angle_cmp(m: CoordModel, atom: MetricCmp):
    """Comparisons where at least one side mentions angle measures.

    Decidable shapes: sums of at most two angles against sums of angles or
    multiples of the right angle, via exact cosine arithmetic; everything
    else is Undefined.
    """

    def side_parts(t: MetricTerm):
        angles = _angle_atoms(t)
        if angles and isinstance(t, (AngleDeg, Sum)):
            terms = t.terms if isinstance(t, Sum) else (t,)
            if all(isinstance(s, AngleDeg) for s in terms):
                return ("angles", [ _AngleVal(m, s.a, s.b, s.c) for s in terms ])
        k = _right_angle_units(t)
        if k is not None:
            return ("right_units", k)
        return ("other", None)

    lk, lv = side_parts(atom.lhs)
    rk, rv = side_parts(atom.rhs)
    if lk == "other" or rk == "other":
        return UNDEFINED
    if lk == "right_units" and rk == "angles":
        return _eval_angle_cmp(
            m, MetricCmp({"<": ">", ">": "<", "<=": ">=", ">=": "<=", "=": "="}[atom.op], atom.rhs, atom.lhs)
        )
    if lk == "angles" and any(a.degenerate for a in lv):
        return UNDEFINED
    if rk == "angles" and any(a.degenerate for a in rv):
        return UNDEFINED

    if lk == "angles" and rk == "angles":
        if len(lv) == 1 and len(rv) == 1:
            # angles in [0,180]: x op y  <=>  cos x (reversed op) cos y
            s = (lv[0].cos() - rv[0].cos()).sign()
            return _cmp_verdict(-s, atom.op) if atom.op != "=" else s == 0
        if len(lv) == 1 and len(rv) == 2:
            return _angle_vs_pair(lv[0], rv[0], rv[1], _flip(atom.op))
        if len(lv) == 2 and len(rv) == 1:
            return _angle_vs_pair(rv[0], lv[0], lv[1], atom.op)
        return UNDEFINED

    if lk == "angles" and rk == "right_units":
        k = rv
        if len(lv) == 1:
            return _angle_vs_right_units(lv[0], k, atom.op)
        if len(lv) == 2:
            return _angle_pair_vs_right_units(lv[0], lv[1], k, atom.op)
        return UNDEFINED
    return UNDEFINED


def _flip(op: str) -> str:
    return {"<": ">", ">": "<", "<=": ">=", ">=": "<=", "=": "="}[op]


def _angle_vs_right_units(a: _AngleVal, k: int, op: str):
    """angle op k*90deg for k in {0,1,2}; other k exceed the angle range."""
    if k == 0:
        # angle = 0 iff cos = 1; cos <= 1 always, so angle > 0 iff cos < 1
        d = (a.cos() - SqrtSum.of_rational(Fraction(1))).sign()
        ang_sign = 0 if d == 0 else 1
        return _cmp_verdict(ang_sign, op)
    if k == 1:
        s = a.cos().sign()  # cos > 0 iff angle < 90
        return _cmp_verdict(-s, op)
    if k == 2:
        d = (a.cos() + SqrtSum.of_rational(Fraction(1))).sign()
        ang_sign = 0 if d == 0 else -1  # angle vs 180
        return _cmp_verdict(ang_sign, op)
    # angles never exceed 180
    if op in ("<", "<="):
        return True
    if op in (">", ">="):
        return False
    return False


def _angle_pair_vs_right_units(x: _AngleVal, y: _AngleVal, k: int, op: str):
    if k == 2:
        # x + y vs 180  <=>  -(cos x + cos y) vs 0
        s = (x.cos() + y.cos()).sign()
        return _cmp_verdict(-s, op)
    if k == 4:
        both_flat = (x.cos() + SqrtSum.of_rational(Fraction(1))).sign() == 0 and (
            y.cos() + SqrtSum.of_rational(Fraction(1))
        ).sign() == 0
        if op in ("<", "<="):
            return not both_flat if op == "<" else True
        if op == "=":
            return both_flat
        if op == ">=":
            return both_flat
        return False
    return UNDEFINED


def _angle_vs_pair(z: _AngleVal, x: _AngleVal, y: _AngleVal, op: str):
    """x + y op z (op already oriented so the pair is on the left)."""
    # is x + y <= 180?
    pair_within = (x.cos() + y.cos()).sign()
    if pair_within < 0:
        # x + y > 180 >= z
        return _cmp_verdict(1, op)
    # cos(x+y) = cos x cos y - sin x sin y, valid since x+y <= 180
    cos_sum = x.cos() * y.cos() - x.sin() * y.sin()
    try:
        s = (cos_sum - z.cos()).sign()
    except RecursionError:
        return UNDEFINED
    # cos decreasing: sign(x+y vs z) = -sign(cos(x+y) vs cos z)
    return _cmp_verdict(-s, op)


# ---------------------------------------------------------------------------
# Literal evaluation


def _eval_pred(m: CoordModel, atom: PredAtom):
    name, args = atom.name, atom.args
    if name == "onLine":
        return _line_value(m.line(args[1].name), m.point(args[0].name)) == 0
    if name == "between":
        p, q, r = (m.point(v.name) for v in args)
        if _cross(_sub(q, p), _sub(r, p)) != 0:
            return False
        return _dot(_sub(p, q), _sub(r, q)) < 0
    if name == "sameSide":
        L = m.line(args[2].name)
        s1 = _line_value(L, m.point(args[0].name))
        s2 = _line_value(L, m.point(args[1].name))
        return s1 * s2 > 0
    if name == "onCircle":
        (center, r2) = m.circle(args[1].name)
        return dist2(m.point(args[0].name), center) == r2
    if name == "insideCircle":
        (center, r2) = m.circle(args[1].name)
        return dist2(m.point(args[0].name), center) < r2
    if name == "isCentre":
        (center, _) = m.circle(args[1].name)
        return m.point(args[0].name) == center
    if name == "intersectsLine":
        L, M = m.line(args[0].name), m.line(args[1].name)
        return L[0] * M[1] - M[0] * L[1] != 0
    if name == "lineIntersectsCircle":
        L = m.line(args[0].name)
        (center, r2) = m.circle(args[1].name)
        v = _line_value(L, center)
        return v * v < r2 * (L[0] * L[0] + L[1] * L[1])
    if name == "circleIntersectsCircle":
        (c1, r2a) = m.circle(args[0].name)
        (c2, r2b) = m.circle(args[1].name)
        u = dist2(c1, c2) - r2a - r2b
        return u * u < 4 * r2a * r2b
    raise ValueError(f"unknown basic predicate {name}")


def _triangle_equalities(t1: tuple[Var, Var, Var], t2: tuple[Var, Var, Var], similar: bool):
    (a, b, c), (d, e, f) = t1, t2
    sides = [
        MetricCmp("=", Length(a, b), Length(d, e)),
        MetricCmp("=", Length(b, c), Length(e, f)),
        MetricCmp("=", Length(a, c), Length(d, f)),
    ]
    if similar:
        sides = [
            MetricCmp("=", Product((Length(a, b), Length(e, f))), Product((Length(b, c), Length(d, e)))),
            MetricCmp("=", Product((Length(b, c), Length(f, d))), Product((Length(c, a), Length(e, f)))),
        ]
    angles = [
        MetricCmp("=", AngleDeg(a, b, c), AngleDeg(d, e, f)),
        MetricCmp("=", AngleDeg(a, c, b), AngleDeg(d, f, e)),
        MetricCmp("=", AngleDeg(b, a, c), AngleDeg(e, d, f)),
    ]
    return sides + angles


def eval_atom(m: CoordModel, atom: Atom):
    if isinstance(atom, PredAtom):
        if atom.name in ("onLine", "between", "sameSide", "onCircle", "insideCircle",
                         "isCentre", "intersectsLine", "lineIntersectsCircle",
                         "circleIntersectsCircle"):
            return _eval_pred(m, atom)
        # sugar: evaluate the instantiated body
        body, disjunctive = sugar_body(Literal(False, atom))
        vals = [eval_literal(m, b) for b in body]
        return _combine(vals, any_mode=disjunctive)
    if isinstance(atom, ObjectEq):
        if atom.lhs.sort is Sort.POINT:
            return m.point(atom.lhs.name) == m.point(atom.rhs.name)
        if atom.lhs.sort is Sort.LINE:
            L, M = m.line(atom.lhs.name), m.line(atom.rhs.name)
            return _cross((L[0], L[1]), (M[0], M[1])) == 0 and (
                L[0] * M[2] == M[0] * L[2] and L[1] * M[2] == M[1] * L[2]
            )
        return m.circle(atom.lhs.name) == m.circle(atom.rhs.name)
    if isinstance(atom, MetricCmp):
        try:
            return _eval_metric_cmp(m, atom)
        except (RecursionError, ValueError):
            return UNDEFINED
    if isinstance(atom, (Congruent, Similar)):
        eqs = _triangle_equalities(atom.t1, atom.t2, isinstance(atom, Similar))
        try:
            vals = [_eval_metric_cmp(m, e) for e in eqs]
        except (RecursionError, ValueError):
            return UNDEFINED
        return _combine(vals, any_mode=False)
    if isinstance(atom, Falsum):
        return False
    raise TypeError(atom)


def _combine(vals, any_mode: bool):
    decided = [v for v in vals if v is not UNDEFINED]
    if any_mode:
        if any(v is True for v in decided):
            return True
        if len(decided) == len(vals):
            return False
        return UNDEFINED
    if any(v is False for v in decided):
        return False
    if len(decided) == len(vals):
        return True
    return UNDEFINED


def eval_literal(m: CoordModel, lit: Literal):
    """Exact truth value of a ground literal, or UNDEFINED."""
    v = eval_atom(m, lit.atom)
    if v is UNDEFINED:
        return UNDEFINED
    return (not v) if lit.neg else v


def eval_clause(m: CoordModel, cl: Clause):
    return _combine([eval_literal(m, l) for l in cl.literals], any_mode=True)


def eval_clauses(m: CoordModel, clauses: Sequence[Clause]):
    return _combine([eval_clause(m, c) for c in clauses], any_mode=False)

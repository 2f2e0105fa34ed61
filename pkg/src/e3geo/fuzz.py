"""Empirical soundness fuzzing of non-construction rules against the
coordinate oracle.

Each trial builds a rational model aimed at the rule's instantiated
premises (constraint-directed placement plus rejection for the residual
conditions), then evaluates the conclusion exactly.  A premise-true model
with a definitely-false conclusion is a counterexample; Undefined
evaluations skip the trial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .ast import (
    Clause,
    Literal,
    ObjectEq,
    PredAtom,
    Sort,
    Var,
    clause_vars,
    subst_clause,
)
from .oracle import (
    UNDEFINED,
    CoordModel,
    Pt,
    dist2,
    eval_clauses,
    line_intersection,
    line_through,
)
from .rules import Rule, RuleKind
from .sugar import desugar_theorem


def fuzzable(rule: Rule) -> bool:
    return rule.kind in (RuleKind.DIAGRAMMATIC, RuleKind.METRIC, RuleKind.TRANSFER)


@dataclass
class FuzzResult:
    rule: str
    filtered_trials: int
    skipped: int
    attempts: int
    counterexample: Optional[CoordModel] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


class _Sampler:
    """Shared randomness helpers; coordinates stay on the rational grid
    (|value| <= 8, denominators <= 8) apart from derived intersections."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def fraction(self, lo: int = -8, hi: int = 8) -> Fraction:
        den = self.rng.randint(1, 8)
        num = self.rng.randint(lo * den, hi * den)
        return Fraction(num, den)

    def small_positive(self) -> Fraction:
        return Fraction(self.rng.randint(1, 16), self.rng.randint(2, 16))

    def unit_interval(self) -> Fraction:
        den = self.rng.randint(2, 12)
        return Fraction(self.rng.randint(1, den - 1), den)

    def point(self, near: Optional[Pt] = None) -> Pt:
        if near is not None and self.rng.random() < 0.3:
            # structured degeneracy: share a coordinate with an anchor
            if self.rng.random() < 0.5:
                return (near[0], self.fraction())
            return (self.fraction(), near[1])
        return (self.fraction(), self.fraction())

    def direction(self) -> Pt:
        while True:
            d = (Fraction(self.rng.randint(-4, 4)), Fraction(self.rng.randint(-4, 4)))
            if d != (0, 0):
                return d

    def point_on_line(self, L, anchor: Optional[Pt] = None) -> Pt:
        A, B, C = L
        base = anchor
        if base is None:
            if B != 0:
                x = self.fraction()
                base = (x, (-C - A * x) / B)
            else:
                y = self.fraction()
                base = ((-C - B * y) / A, y)
        d = (B, -A)
        t = self.fraction(-4, 4)
        return (base[0] + t * d[0], base[1] + t * d[1])

    def point_on_circle(self, center: Pt, base: Pt) -> Pt:
        """Another rational point of the circle through `base`, by the
        rational chord parametrization from `base`."""
        for _ in range(8):
            d = self.direction()
            dd = d[0] * d[0] + d[1] * d[1]
            u = (base[0] - center[0], base[1] - center[1])
            s = Fraction(-2) * (u[0] * d[0] + u[1] * d[1]) / dd
            p = (base[0] + s * d[0], base[1] + s * d[1])
            if p != base or self.rng.random() < 0.1:
                return p
        return base


class _BuildFail(Exception):
    pass


@dataclass
class _Partial:
    points: dict[str, Pt] = field(default_factory=dict)
    lines: dict[str, tuple] = field(default_factory=dict)
    # circles keep a rational base point for parametrization
    circles: dict[str, tuple[Pt, Fraction, Pt]] = field(default_factory=dict)

    def model(self) -> CoordModel:
        return CoordModel(
            dict(self.points),
            dict(self.lines),
            {n: (c, r2) for n, (c, r2, _) in self.circles.items()},
        )


def _instantiated(rule: Rule) -> tuple[list[Var], list[Clause], list[Clause], list[Var]]:
    stmt = desugar_theorem(rule.statement)
    return (
        list(stmt.universals),
        list(stmt.preconditions),
        list(stmt.postconditions),
        list(stmt.existentials),
    )


def _anchor(part: _Partial) -> Optional[Pt]:
    return next(iter(part.points.values()), None)


def _generic_build(
    part: _Partial, preconds: list[Clause], universals: list[Var], s: _Sampler
) -> None:
    """Place objects to satisfy the positive incidence literals; everything
    else is left to exact verification (rejection).

    Incidence constraints are collected first so that lines get built
    through the points required on them (and circles around their centre /
    through their on-points) instead of at random.
    """
    singles = [
        c.literals[0]
        for c in preconds
        if c.is_singleton and not c.literals[0].neg and isinstance(c.literals[0].atom, PredAtom)
    ]
    line_pts: dict[str, list[str]] = {}
    circle_centre: dict[str, str] = {}
    circle_on: dict[str, list[str]] = {}
    circle_in: dict[str, list[str]] = {}
    for lit in singles:
        atom = lit.atom
        if atom.name == "onLine":
            line_pts.setdefault(atom.args[1].name, []).append(atom.args[0].name)
        elif atom.name == "isCentre":
            circle_centre.setdefault(atom.args[1].name, atom.args[0].name)
        elif atom.name == "onCircle":
            circle_on.setdefault(atom.args[1].name, []).append(atom.args[0].name)
        elif atom.name == "insideCircle":
            circle_in.setdefault(atom.args[1].name, []).append(atom.args[0].name)

    for _ in range(2):
        # pass: order-driven placement of points via between/onLine/sameSide
        for lit in singles:
            _place_for(part, lit.atom, s)
        # pass: build lines through their placed points, then drop the
        # still-missing points onto them
        for lname, wanted in line_pts.items():
            placed = []
            for pn in wanted:
                c = part.points.get(pn)
                if c is not None and c not in placed:
                    placed.append(c)
            if lname not in part.lines:
                if len(placed) >= 2:
                    part.lines[lname] = line_through(placed[0], placed[1])
                elif len(placed) == 1:
                    other = s.point(placed[0])
                    if other == placed[0]:
                        other = (placed[0][0] + 1, placed[0][1])
                    part.lines[lname] = line_through(placed[0], other)
                else:
                    _ensure(part, Var(lname, Sort.LINE), s)
            L = part.lines[lname]
            for pn in wanted:
                if pn not in part.points:
                    part.points[pn] = s.point_on_line(L)
        # pass: build circles from centre/on/inside constraints
        for cname in [*circle_centre, *circle_on, *circle_in]:
            if cname in part.circles:
                continue
            centre_name = circle_centre.get(cname)
            if centre_name is not None and centre_name not in part.points:
                part.points[centre_name] = s.point(_anchor(part))
            centre = part.points[centre_name] if centre_name else s.point(_anchor(part))
            ons = [part.points[p] for p in circle_on.get(cname, []) if p in part.points]
            ins = [part.points[p] for p in circle_in.get(cname, []) if p in part.points]
            base = next((p for p in ons if p != centre), None)
            if base is None and ins:
                # radius strictly past the inside point
                w = next((p for p in ins if p != centre), None)
                if w is not None:
                    t = Fraction(1) + s.small_positive()
                    base = (centre[0] + t * (w[0] - centre[0]), centre[1] + t * (w[1] - centre[1]))
            if base is None or base == centre:
                base = s.point(centre)
                if base == centre:
                    base = (centre[0] + 1, centre[1])
            part.circles[cname] = (centre, dist2(centre, base), base)
        for cname, wanted in circle_on.items():
            centre, r2, base = part.circles[cname]
            for pn in wanted:
                if pn not in part.points:
                    part.points[pn] = s.point_on_circle(centre, base)
        for cname, wanted in circle_in.items():
            centre, r2, base = part.circles[cname]
            for pn in wanted:
                if pn not in part.points:
                    t = s.unit_interval()
                    part.points[pn] = (
                        centre[0] + t * (base[0] - centre[0]),
                        centre[1] + t * (base[1] - centre[1]),
                    )
    # any still-unplaced universals get generic values
    for v in universals:
        _ensure(part, v, s)


def _ensure(part: _Partial, v: Var, s: _Sampler) -> None:
    if v.sort is Sort.POINT:
        if v.name not in part.points:
            part.points[v.name] = s.point(_anchor(part))
    elif v.sort is Sort.LINE:
        if v.name not in part.lines:
            p = s.point(_anchor(part))
            q = s.point(p)
            if p == q:
                q = (p[0] + 1, p[1])
            part.lines[v.name] = line_through(p, q)
    else:
        if v.name not in part.circles:
            center = s.point(_anchor(part))
            base = s.point(center)
            if base == center:
                base = (center[0] + 1, center[1])
            part.circles[v.name] = (center, dist2(center, base), base)


def _place_for(part: _Partial, atom: PredAtom, s: _Sampler) -> None:
    """Place still-unknown points to satisfy one incidence atom.

    Container objects (lines, circles) are never created here; the
    dedicated passes in _generic_build construct them from their collected
    constraints first, and a second sweep gives these placements another
    chance once the containers exist.
    """
    name, args = atom.name, atom.args
    pts, lns, crs = part.points, part.lines, part.circles
    if name == "onLine":
        p, L = args
        if L.name in lns and p.name not in pts:
            pts[p.name] = s.point_on_line(lns[L.name])
    elif name == "between":
        a, b, c = args
        if a.name in pts and c.name in pts and b.name not in pts:
            pa, pc = pts[a.name], pts[c.name]
            if pa == pc:
                raise _BuildFail()
            t = s.unit_interval()
            pts[b.name] = (pa[0] + t * (pc[0] - pa[0]), pa[1] + t * (pc[1] - pa[1]))
        elif a.name in pts and b.name in pts and c.name not in pts:
            pa, pb = pts[a.name], pts[b.name]
            if pa == pb:
                raise _BuildFail()
            t = s.small_positive()
            pts[c.name] = (pb[0] + t * (pb[0] - pa[0]), pb[1] + t * (pb[1] - pa[1]))
        elif b.name in pts and c.name in pts and a.name not in pts:
            pb, pc = pts[b.name], pts[c.name]
            if pb == pc:
                raise _BuildFail()
            t = s.small_positive()
            pts[a.name] = (pb[0] + t * (pb[0] - pc[0]), pb[1] + t * (pb[1] - pc[1]))
        elif a.name not in pts and b.name not in pts and c.name not in pts:
            pa = s.point(_anchor(part))
            d = s.direction()
            t1, t2 = s.unit_interval(), Fraction(1)
            pts[a.name] = pa
            pts[b.name] = (pa[0] + t1 * d[0], pa[1] + t1 * d[1])
            pts[c.name] = (pa[0] + t2 * d[0], pa[1] + t2 * d[1])
    elif name == "sameSide":
        a, b, L = args
        if L.name not in lns:
            return
        coefs = lns[L.name]
        if b.name in pts and a.name not in pts:
            pts[a.name] = _beside(coefs, pts[b.name], s)
        elif a.name in pts and b.name not in pts:
            pts[b.name] = _beside(coefs, pts[a.name], s)
        elif a.name not in pts and b.name not in pts:
            p = _offline(coefs, s)
            pts[a.name] = p
            pts[b.name] = _beside(coefs, p, s)
    elif name in ("onCircle", "insideCircle"):
        p, al = args
        if al.name in crs and p.name not in pts:
            center, r2, base = crs[al.name]
            if name == "onCircle":
                pts[p.name] = s.point_on_circle(center, base)
            else:
                t = s.unit_interval()
                pts[p.name] = (
                    center[0] + t * (base[0] - center[0]),
                    center[1] + t * (base[1] - center[1]),
                )
    elif name == "isCentre":
        p, al = args
        if al.name in crs and p.name not in pts:
            pts[p.name] = crs[al.name][0]
    elif name == "intersectsLine":
        L, M = args
        if L.name in lns and M.name not in lns:
            p = s.point_on_line(lns[L.name])
            q = s.point(p)
            cand = None if q == p else line_through(p, q)
            if cand is None or cand[0] * lns[L.name][1] == cand[1] * lns[L.name][0]:
                q = (p[0] + 1, p[1] + 1)
            lns[M.name] = line_through(p, q)
    elif name == "lineIntersectsCircle":
        L, al = args
        if al.name in crs and L.name not in lns:
            center, r2, base = crs[al.name]
            t = s.unit_interval()
            inside = (
                center[0] + t * (base[0] - center[0]),
                center[1] + t * (base[1] - center[1]),
            )
            other = s.point(inside)
            if other == inside:
                other = (inside[0] + 1, inside[1])
            lns[L.name] = line_through(inside, other)
    elif name == "circleIntersectsCircle":
        al, be = args
        if al.name in crs and be.name not in crs:
            center, r2, base = crs[al.name]
            w = s.point_on_circle(center, base)
            c2 = s.point(w)
            if c2 == w:
                c2 = (w[0] + 1, w[1])
            crs[be.name] = (c2, dist2(c2, w), w)


def _offline(L, s: _Sampler) -> Pt:
    for _ in range(16):
        p = s.point()
        if L[0] * p[0] + L[1] * p[1] + L[2] != 0:
            return p
    raise _BuildFail()


def _beside(L, other: Pt, s: _Sampler) -> Pt:
    sign = L[0] * other[0] + L[1] * other[1] + L[2]
    if sign == 0:
        raise _BuildFail()
    for _ in range(16):
        p = s.point()
        v = L[0] * p[0] + L[1] * p[1] + L[2]
        if v * sign > 0:
            return p
    raise _BuildFail()


# ---------------------------------------------------------------------------
# Rule-specific builders for metrically constrained premises


def _rigid_motions(s: _Sampler):
    """Rational rotation (from Pythagorean triples), optional reflection,
    plus translation."""
    triples = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (1, 0, 1), (0, 1, 1), (20, 21, 29)]
    a, b, c = triples[s.rng.randrange(len(triples))]
    cos, sin = Fraction(a, c), Fraction(b, c)
    if s.rng.random() < 0.5:
        sin = -sin
    reflect = s.rng.random() < 0.5
    tx, ty = s.fraction(), s.fraction()

    def move(p: Pt) -> Pt:
        x, y = p
        if reflect:
            y = -y
        return (cos * x - sin * y + tx, sin * x + cos * y + ty)

    return move


def _sample_triangle(s: _Sampler) -> tuple[Pt, Pt, Pt]:
    for _ in range(24):
        a, b, c = s.point(), s.point(), s.point()
        if (b[0] - a[0]) * (c[1] - a[1]) != (b[1] - a[1]) * (c[0] - a[0]):
            return a, b, c
    raise _BuildFail()


def _build_names(part: _Partial, names: list[str], values: list[Pt]) -> None:
    for n, v in zip(names, values):
        part.points[n] = v


def _custom_zero_segment_if(part, s: _Sampler) -> None:
    p = s.point()
    _build_names(part, ["a", "b"], [p, p])


def _custom_equidistant(part: _Partial, s: _Sampler) -> None:
    # premises of the |(a--c)| = |(a--b)| shape: c is another rational point
    # of the circle around a through b
    a, b = s.point(), s.point()
    if a == b:
        b = (a[0] + 1, a[1])
    c = s.point_on_circle(a, b)
    _build_names(part, ["a", "b", "c"], [a, b, c])


def _custom_flat_angle_if(part, s: _Sampler) -> None:
    a = s.point()
    d = s.direction()
    t = s.unit_interval()
    b = (a[0] + t * d[0], a[1] + t * d[1])
    c = (a[0] + d[0], a[1] + d[1])
    _build_names(part, ["a", "b", "c"], [a, b, c])


def _custom_same_ray(part, s: _Sampler) -> None:
    # degenerated_angle_onlyif: angle b:a:c = 0 needs c on the ray a->b
    a = s.point()
    d = s.direction()
    b = (a[0] + d[0], a[1] + d[1])
    t = s.small_positive()
    c = (a[0] + t * d[0], a[1] + t * d[1])
    _build_names(part, ["a", "b", "c"], [a, b, c])
    part.lines["L"] = line_through(a, b)


def _custom_perpendicular(part, s: _Sampler) -> None:
    # a, b on L with c between; d off L on the perpendicular at c
    a = s.point()
    d_dir = s.direction()
    b = (a[0] + d_dir[0], a[1] + d_dir[1])
    t = s.unit_interval()
    c = (a[0] + t * d_dir[0], a[1] + t * d_dir[1])
    n = (-d_dir[1], d_dir[0])
    u = s.small_positive()
    dpt = (c[0] + u * n[0], c[1] + u * n[1])
    _build_names(part, ["a", "b", "c", "d"], [a, b, c, dpt])
    part.lines["L"] = line_through(a, b)


def _custom_angle_cone(part, s: _Sampler) -> None:
    # sum_angles_*: d strictly inside the angle b:a:c
    a, b, c = _sample_triangle(s)
    u, v = s.small_positive(), s.small_positive()
    dpt = (
        a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
        a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1]),
    )
    _build_names(part, ["a", "b", "c", "d"], [a, b, c, dpt])
    part.lines["L"] = line_through(a, b)
    part.lines["M"] = line_through(a, c)


def _custom_area_congruence(part, s: _Sampler) -> None:
    a, b, c = _sample_triangle(s)
    move = _rigid_motions(s)
    _build_names(part, ["a", "b", "c", "a'", "b'", "c'"], [a, b, c, move(a), move(b), move(c)])


def _parallelogram_points(s: _Sampler, rectangle: bool) -> tuple[Pt, Pt, Pt, Pt]:
    for _ in range(24):
        a = s.point()
        d1 = s.direction()
        if rectangle:
            d2 = (-d1[1], d1[0])
        else:
            d2 = s.direction()
        if d1[0] * d2[1] - d1[1] * d2[0] == 0:
            continue
        k1 = s.small_positive()
        k2 = s.small_positive()
        b = (a[0] + k1 * d1[0], a[1] + k1 * d1[1])
        c = (a[0] + k2 * d2[0], a[1] + k2 * d2[1])
        d = (b[0] + k2 * d2[0], b[1] + k2 * d2[1])
        return a, b, c, d
    raise _BuildFail()


def _custom_parallelogram(names=("a", "b", "c", "d"), lines=("AB", "CD", "AC", "BD"), rectangle=False, extras=False):
    def build(part: _Partial, s: _Sampler) -> None:
        a, b, c, d = _parallelogram_points(s, rectangle)
        _build_names(part, list(names), [a, b, c, d])
        part.lines[lines[0]] = line_through(a, b)
        part.lines[lines[1]] = line_through(c, d)
        part.lines[lines[2]] = line_through(a, c)
        part.lines[lines[3]] = line_through(b, d)
        if extras:
            t = s.unit_interval()
            e = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            u = s.unit_interval()
            f = (c[0] + u * (d[0] - c[0]), c[1] + u * (d[1] - c[1]))
            _build_names(part, ["e", "f"], [e, f])

    return build


def _custom_sum_areas_onlyif(part, s: _Sampler) -> None:
    a = s.point()
    d_dir = s.direction()
    b = (a[0] + d_dir[0], a[1] + d_dir[1])
    t = s.unit_interval()
    c = (a[0] + t * d_dir[0], a[1] + t * d_dir[1])
    part.lines["L"] = line_through(a, b)
    dpt = _offline(part.lines["L"], s)
    _build_names(part, ["a", "b", "c", "d"], [a, b, c, dpt])


def _custom_collinear_abc(part, s: _Sampler) -> None:
    # degenerated_area_if: zero area needs a, b, c collinear
    a = s.point()
    d_dir = s.direction()
    b = (a[0] + d_dir[0], a[1] + d_dir[1])
    t = s.fraction(-3, 3)
    c = (a[0] + t * d_dir[0], a[1] + t * d_dir[1])
    _build_names(part, ["a", "b", "c"], [a, b, c])
    part.lines["L"] = line_through(a, b)


def _custom_circles_diff_side(part, s: _Sampler) -> None:
    # centres a, b on the perpendicular bisector of the common chord c--d
    c = s.point()
    d = s.point(c)
    if c == d:
        d = (c[0] + 1, c[1])
    mid = ((c[0] + d[0]) / 2, (c[1] + d[1]) / 2)
    n = (-(d[1] - c[1]), d[0] - c[0])
    t1, t2 = s.fraction(-4, 4), s.fraction(-4, 4)
    if t1 == t2:
        t2 = t1 + 1
    a = (mid[0] + t1 * n[0], mid[1] + t1 * n[1])
    b = (mid[0] + t2 * n[0], mid[1] + t2 * n[1])
    _build_names(part, ["a", "b", "c", "d"], [a, b, c, d])
    part.circles["α"] = (a, dist2(a, c), c)
    part.circles["β"] = (b, dist2(b, c), c)
    part.lines["L"] = line_through(a, b)


def _circle_with_base(s: _Sampler) -> tuple[Pt, Fraction, Pt]:
    centre = s.point()
    base = s.point(centre)
    if base == centre:
        base = (centre[0] + 1, centre[1])
    return (centre, dist2(centre, base), base)


def _scaled_from_centre(centre: Pt, base: Pt, t: Fraction) -> Pt:
    return (centre[0] + t * (base[0] - centre[0]), centre[1] + t * (base[1] - centre[1]))


def _custom_circle_line_intersections(part, s: _Sampler) -> None:
    # b, c on the circle; the chord through them; a in the chord's interior
    centre, r2, base = _circle_with_base(s)
    b = base
    c = s.point_on_circle(centre, base)
    if b == c:
        raise _BuildFail()
    t = s.unit_interval()
    a = (b[0] + t * (c[0] - b[0]), b[1] + t * (c[1] - b[1]))
    part.circles["α"] = (centre, r2, base)
    part.lines["L"] = line_through(b, c)
    _build_names(part, ["a", "b", "c"], [a, b, c])


def _custom_circle_points(extend: bool):
    def build(part: _Partial, s: _Sampler) -> None:
        centre, r2, base = _circle_with_base(s)
        part.circles["α"] = (centre, r2, base)
        ta = s.unit_interval() if s.rng.random() < 0.7 else Fraction(1)
        a = _scaled_from_centre(centre, base, ta)
        if extend:
            # a not outside, c not inside, c between a and b
            tc = Fraction(1) + (Fraction(0) if s.rng.random() < 0.3 else s.small_positive())
            c = _scaled_from_centre(centre, base, tc)
            u = s.small_positive()
            b = (c[0] + u * (c[0] - a[0]), c[1] + u * (c[1] - a[1]))
        else:
            # a, b not outside, c between them
            tb = s.unit_interval() if s.rng.random() < 0.7 else Fraction(-1)
            b = _scaled_from_centre(centre, base, -tb)
            u = s.unit_interval()
            c = (a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))
        _build_names(part, ["a", "b", "c"], [a, b, c])

    return build


def _custom_icc1(part, s: _Sampler) -> None:
    # a, b on alpha; a inside beta, b outside beta: pick beta's radius point
    # along c2->b strictly between the distances to a and to b
    centre, r2, base = _circle_with_base(s)
    part.circles["α"] = (centre, r2, base)
    a = base
    b = s.point_on_circle(centre, base)
    if a == b:
        raise _BuildFail()
    c2 = s.point(a)
    d2a, d2b = dist2(c2, a), dist2(c2, b)
    if d2a >= d2b or c2 == a:
        raise _BuildFail()
    for num, den in ((1, 2), (2, 3), (3, 4), (7, 8), (15, 16), (31, 32)):
        sfrac = Fraction(num, den)
        if sfrac * sfrac * d2b > d2a:
            w = (c2[0] + sfrac * (b[0] - c2[0]), c2[1] + sfrac * (b[1] - c2[1]))
            part.circles["β"] = (c2, dist2(c2, w), w)
            break
    else:
        raise _BuildFail()
    _build_names(part, ["a", "b"], [a, b])


def _custom_icc2(part, s: _Sampler) -> None:
    # a on alpha, b inside alpha, a inside beta, b on beta: beta's centre
    # sits on the far side of a so that |c2-a| < |c2-b|
    centre, r2, base = _circle_with_base(s)
    part.circles["α"] = (centre, r2, base)
    a = base
    b = _scaled_from_centre(centre, base, s.unit_interval())
    if a == b:
        raise _BuildFail()
    u = s.small_positive()
    c2 = (a[0] + u * (a[0] - b[0]), a[1] + u * (a[1] - b[1]))
    part.circles["β"] = (c2, dist2(c2, b), b)
    _build_names(part, ["a", "b"], [a, b])


def _custom_icl1(part, s: _Sampler) -> None:
    # a, b not outside; L crosses between them
    centre, r2, base = _circle_with_base(s)
    part.circles["α"] = (centre, r2, base)
    a = _scaled_from_centre(centre, base, s.unit_interval())
    b = _scaled_from_centre(centre, s.point_on_circle(centre, base), -s.unit_interval())
    if a == b:
        raise _BuildFail()
    t = s.unit_interval()
    m = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    d = s.direction()
    other = (m[0] + d[0], m[1] + d[1])
    if other == m:
        raise _BuildFail()
    part.lines["L"] = line_through(m, other)
    _build_names(part, ["a", "b"], [a, b])


def _custom_parallel_line_unique(part, s: _Sampler) -> None:
    # M and N are the same parallel through a, under different coefficients
    L = line_through(s.point(), s.point((Fraction(1), Fraction(1))))
    a = _offline(L, s)
    A, B, _ = L
    CM = -(A * a[0] + B * a[1])
    part.lines["L"] = L
    part.lines["M"] = (A, B, CM)
    part.lines["N"] = (2 * A, 2 * B, 2 * CM)
    _build_names(part, ["a"], [a])


def _custom_lines_intersect(part, s: _Sampler) -> None:
    # build the convergent configuration from its apex: rays b->e and c->e
    # meet at e off the transversal M = line(b, c)
    b, c = s.point(), s.point()
    if b == c:
        c = (b[0] + 1, b[1])
    M = line_through(b, c)
    e = _offline(M, s)
    t, u = s.unit_interval(), s.unit_interval()
    a = (b[0] + t * (e[0] - b[0]), b[1] + t * (e[1] - b[1]))
    d = (c[0] + u * (e[0] - c[0]), c[1] + u * (e[1] - c[1]))
    if a == b or d == c:
        raise _BuildFail()
    _build_names(part, ["a", "b", "c", "d"], [a, b, c, d])
    part.lines["L"] = line_through(b, a)
    part.lines["M"] = M
    part.lines["N"] = line_through(c, d)


def _custom_metric_completion(part, s: _Sampler) -> None:
    a = s.point()
    d = s.direction()
    t = s.unit_interval()
    y = (a[0] + t * d[0], a[1] + t * d[1])
    z = (a[0] + d[0], a[1] + d[1])
    _build_names(part, ["x", "y", "z"], [a, y, z])


_CUSTOM_BUILDERS: dict[str, Callable[[_Partial, _Sampler], None]] = {
    "zero_segment_if": _custom_zero_segment_if,
    "equal_circles": _custom_equidistant,
    "point_on_circle_if": _custom_equidistant,
    "flat_angle_if": _custom_flat_angle_if,
    "degenerated_angle_onlyif": _custom_same_ray,
    "perpendicular_if": _custom_perpendicular,
    "sum_angles_if": _custom_angle_cone,
    "sum_angles_onlyif": _custom_angle_cone,
    "area_congruence": _custom_area_congruence,
    "sum_areas_onlyif": _custom_sum_areas_onlyif,
    "degenerated_area_if": _custom_collinear_abc,
    "circles_intersections_diff_side": _custom_circles_diff_side,
    "circle_line_intersections": _custom_circle_line_intersections,
    "lines_intersect": _custom_lines_intersect,
    "circle_points_between": _custom_circle_points(extend=False),
    "circle_points_extend": _custom_circle_points(extend=True),
    "intersection_circle_circle_1": _custom_icc1,
    "intersection_circle_circle_2": _custom_icc2,
    "intersection_circle_line_1": _custom_icl1,
    "parallel_line_unique": _custom_parallel_line_unique,
    "parallelogram_same_side": _custom_parallelogram(),
    "parallelogram_area": _custom_parallelogram(),
    "rectangle_area": _custom_parallelogram(rectangle=True),
    "sum_parallelograms_area": _custom_parallelogram(extras=True),
    "metric_completion": _custom_metric_completion,
}


def _witness_candidates(model: CoordModel) -> list[Pt]:
    pts = list(model.points.values())
    lines = list(model.lines.values())
    for i, L in enumerate(lines):
        for M in lines[i + 1 :]:
            p = line_intersection(L, M)
            if p is not None:
                pts.append(p)
    return pts


def fuzz_rule(
    rule: Rule,
    trials: int = 1000,
    seed: int = 0,
    max_attempts_factor: int = 400,
) -> FuzzResult:
    """Hunt for premise-true models violating the rule's conclusion."""
    if not fuzzable(rule):
        raise ValueError(f"{rule.name} is not a non-construction rule")
    universals, preconds, postconds, existentials = _instantiated(rule)
    rng = random.Random(f"{seed}:{rule.name}")
    s = _Sampler(rng)
    custom = _CUSTOM_BUILDERS.get(rule.name)

    filtered = 0
    skipped = 0
    attempts = 0
    max_attempts = max(trials * max_attempts_factor, 1000)
    while filtered < trials and attempts < max_attempts:
        attempts += 1
        part = _Partial()
        try:
            if custom is not None:
                custom(part, s)
            _generic_build(part, preconds, universals, s)
        except _BuildFail:
            continue
        except (ZeroDivisionError, ValueError):
            continue
        try:
            model = part.model()
        except ValueError:
            continue
        try:
            pre = eval_clauses(model, preconds)
        except Exception:
            continue
        if pre is UNDEFINED:
            skipped += 1
            continue
        if pre is not True:
            continue
        filtered += 1
        verdict = _check_conclusion(model, postconds, existentials)
        if verdict is UNDEFINED:
            skipped += 1
        elif verdict is False:
            return FuzzResult(rule.name, filtered, skipped, attempts, model)
    return FuzzResult(rule.name, filtered, skipped, attempts, None)


def _check_conclusion(model: CoordModel, postconds, existentials):
    if not existentials:
        return eval_clauses(model, postconds)
    if any(v.sort is not Sort.POINT for v in existentials):
        return UNDEFINED
    candidates = _witness_candidates(model)
    saw_undefined = False
    for combo in _combos(candidates, len(existentials)):
        ext = CoordModel(
            {**model.points, **{v.name: c for v, c in zip(existentials, combo)}},
            model.lines,
            model.circles,
        )
        v = eval_clauses(ext, postconds)
        if v is True:
            return True
        if v is UNDEFINED:
            saw_undefined = True
    return UNDEFINED if saw_undefined else False


def _combos(candidates, k):
    if k == 1:
        for c in candidates:
            yield (c,)
    else:
        import itertools

        yield from itertools.product(candidates, repeat=k)


def fuzz_all(
    rules, trials: int = 1000, seed: int = 0
) -> list[FuzzResult]:
    return [fuzz_rule(r, trials, seed) for r in rules if fuzzable(r)]

"""The built-in rule library: construction, diagrammatic, metric, transfer,
and superposition rules, written in the surface language and parsed at import.

Segment-typed rule parameters (`point_between_points_shorter_than`,
`extend_point_longer`) are represented as a pair of point parameters; callers
pass `(p--q)` at the surface.  Quantifiers over derived entities (segments,
angles, triangles) are flattened to their defining points.
"""

from __future__ import annotations

CONSTRUCTION = [
    ("arbitrary_point", "∃ a : Point, true"),
    ("distinct_points", "∀ a : Point, ∃ b : Point, a ≠ b"),
    ("line_nonempty", "∀ l : Line, ∃ p : Point, onLine p l"),
    (
        "exists_distincts_points_on_line",
        "∀ l : Line, ∀ a : Point, ∃ b : Point, a ≠ b ∧ onLine b l",
    ),
    (
        "exists_point_between_points_on_line",
        "∀ (L : Line) (b c : Point), distinctPointsOnLine b c L → "
        "∃ a : Point, onLine a L ∧ between b a c",
    ),
    (
        "exists_point_between_points_not_on_line",
        "∀ (L M : Line) (b c : Point), distinctPointsOnLine b c L ∧ L ≠ M → "
        "∃ a : Point, onLine a L ∧ between b a c ∧ ¬(onLine a M)",
    ),
    (
        "point_between_points_shorter_than",
        "∀ (L : Line) (b c s1 s2 : Point), distinctPointsOnLine b c L ∧ |(s1--s2)| > 0 → "
        "∃ a : Point, onLine a L ∧ between b a c ∧ |(b--a)| < |(s1--s2)|",
    ),
    (
        "extend_point",
        "∀ (L : Line) (b c : Point), distinctPointsOnLine b c L → "
        "∃ a : Point, onLine a L ∧ between b c a",
    ),
    (
        "extend_point_not_on_line",
        "∀ (L M : Line) (b c : Point), distinctPointsOnLine b c L ∧ L ≠ M → "
        "∃ a : Point, onLine a L ∧ between b c a ∧ ¬(onLine a M)",
    ),
    (
        "extend_point_longer",
        "∀ (L : Line) (b c s1 s2 : Point), distinctPointsOnLine b c L → "
        "∃ a : Point, onLine a L ∧ between b c a ∧ |(c--a)| > |(s1--s2)|",
    ),
    (
        "point_same_side",
        "∀ (L : Line) (b : Point), ¬(onLine b L) → ∃ a : Point, sameSide a b L",
    ),
    (
        "distinct_point_same_side",
        "∀ (L : Line) (b c : Point), ¬(onLine b L) → "
        "∃ a : Point, a ≠ c ∧ sameSide a b L",
    ),
    (
        "point_on_line_same_side",
        "∀ (L M : Line) (b : Point), ¬(onLine b L) ∧ intersectsLine L M → "
        "∃ a : Point, onLine a M ∧ sameSide a b L",
    ),
    (
        "exists_point_opposite",
        "∀ (L : Line) (b : Point), ¬(onLine b L) → ∃ a : Point, opposingSides a b L",
    ),
    (
        "exists_distinct_point_opposite_side",
        "∀ (L : Line) (b c : Point), ¬(onLine b L) → "
        "∃ a : Point, a ≠ c ∧ opposingSides a b L",
    ),
    ("exists_point_on_circle", "∀ α : Circle, ∃ a : Point, onCircle a α"),
    (
        "exists_distinct_point_on_circle",
        "∀ (α : Circle) (b : Point), ∃ a : Point, a ≠ b ∧ onCircle a α",
    ),
    ("exists_point_inside_circle", "∀ α : Circle, ∃ a : Point, insideCircle a α"),
    (
        "exists_distinct_point_inside_circle",
        "∀ (α : Circle) (b : Point), ∃ a : Point, a ≠ b ∧ insideCircle a α",
    ),
    ("exists_point_outside_circle", "∀ α : Circle, ∃ a : Point, outsideCircle a α"),
    (
        "exists_distinct_point_outside_circle",
        "∀ (α : Circle) (b : Point), ∃ a : Point, a ≠ b ∧ outsideCircle a α",
    ),
    (
        "line_from_points",
        "∀ (a b : Point), a ≠ b → ∃ L : Line, onLine a L ∧ onLine b L",
    ),
    (
        "circle_from_points",
        "∀ (a b : Point), a ≠ b → ∃ α : Circle, isCentre a α ∧ onCircle b α",
    ),
    (
        "intersection_lines",
        "∀ (L M : Line), intersectsLine L M → ∃ a : Point, onLine a L ∧ onLine a M",
    ),
    (
        "intersection_circle_line",
        "∀ (α : Circle) (L : Line), intersectsCircle L α → "
        "∃ a : Point, onCircle a α ∧ onLine a L",
    ),
    (
        "intersections_circle_line",
        "∀ (α : Circle) (L : Line), intersectsCircle L α → "
        "∃ (a b : Point), onCircle a α ∧ onLine a L ∧ onCircle b α ∧ onLine b L ∧ a ≠ b",
    ),
    (
        "intersection_circle_line_between_points",
        "∀ (α : Circle) (L : Line) (b c : Point), insideCircle b α ∧ onLine b L ∧ "
        "outsideCircle c α ∧ onLine c L → "
        "∃ a : Point, onCircle a α ∧ onLine a L ∧ between b a c",
    ),
    (
        "intersection_circle_line_extending_points",
        "∀ (α : Circle) (L : Line) (b c : Point), insideCircle b α ∧ "
        "distinctPointsOnLine b c L → "
        "∃ a : Point, onCircle a α ∧ onLine a L ∧ between a b c",
    ),
    (
        "intersection_circles",
        "∀ (α β : Circle), intersectsCircle α β → "
        "∃ a : Point, onCircle a α ∧ onCircle a β",
    ),
    (
        "intersections_circles",
        "∀ (α β : Circle), intersectsCircle α β → "
        "∃ (a b : Point), onCircle a α ∧ onCircle a β ∧ onCircle b α ∧ onCircle b β ∧ a ≠ b",
    ),
    (
        "intersection_same_side",
        "∀ (α β : Circle) (b c d : Point) (L : Line), intersectsCircle α β ∧ "
        "isCentre c α ∧ isCentre d β ∧ onLine c L ∧ onLine d L ∧ ¬(onLine b L) → "
        "∃ a : Point, onCircle a α ∧ onCircle a β ∧ sameSide a b L",
    ),
    (
        "intersection_opposite_side",
        "∀ (α β : Circle) (b c d : Point) (L : Line), intersectsCircle α β ∧ "
        "isCentre c α ∧ isCentre d β ∧ onLine c L ∧ onLine d L ∧ ¬(onLine b L) → "
        "∃ a : Point, onCircle a α ∧ onCircle a β ∧ opposingSides a b L",
    ),
]

DIAGRAMMATIC = [
    (
        "two_points_determine_line",
        "∀ (a b : Point) (L M : Line), distinctPointsOnLine a b L ∧ onLine a M ∧ "
        "onLine b M → L = M",
    ),
    (
        "centre_unique",
        "∀ (a b : Point) (α : Circle), isCentre a α ∧ isCentre b α → a = b",
    ),
    (
        "center_inside_circle",
        "∀ (a : Point) (α : Circle), isCentre a α → insideCircle a α",
    ),
    (
        "inside_not_on_circle",
        "∀ (a : Point) (α : Circle), insideCircle a α → ¬(onCircle a α)",
    ),
    (
        "between_symm",
        "∀ (a b c : Point), between a b c → "
        "between c b a ∧ a ≠ b ∧ a ≠ c ∧ ¬(between b a c)",
    ),
    (
        "between_same_line_out",
        "∀ (a b c : Point) (L : Line), between a b c ∧ onLine a L ∧ onLine b L → onLine c L",
    ),
    (
        "between_same_line_in",
        "∀ (a b c : Point) (L : Line), between a b c ∧ onLine a L ∧ onLine c L → onLine b L",
    ),
    (
        "between_trans_in",
        "∀ (a b c d : Point), between a b c ∧ between a d b → between a d c",
    ),
    (
        "between_trans_out",
        "∀ (a b c d : Point), between a b c ∧ between b c d → between a b d",
    ),
    (
        "between_points",
        "∀ (a b c : Point) (L : Line), a ≠ b ∧ b ≠ c ∧ c ≠ a ∧ onLine a L ∧ "
        "onLine b L ∧ onLine c L → (between a b c ∨ between b a c ∨ between a c b)",
    ),
    (
        "between_not_trans",
        "∀ (a b c d : Point), between a b c ∧ between a b d → ¬(between c b d)",
    ),
    (
        "same_side_rfl",
        "∀ (a : Point) (L : Line), ¬(onLine a L) → sameSide a a L",
    ),
    (
        "same_side_symm",
        "∀ (a b : Point) (L : Line), sameSide a b L → sameSide b a L",
    ),
    (
        "same_side_not_on_line",
        "∀ (a b : Point) (L : Line), sameSide a b L → ¬(onLine a L)",
    ),
    (
        "same_side_trans",
        "∀ (a b c : Point) (L : Line), sameSide a b L ∧ sameSide a c L → sameSide b c L",
    ),
    (
        "same_side_pigeon_hole",
        "∀ (a b c : Point) (L : Line), ¬(onLine a L) ∧ ¬(onLine b L) ∧ ¬(onLine c L) → "
        "(sameSide a b L ∨ sameSide a c L ∨ sameSide b c L)",
    ),
    (
        "pasch_1",
        "∀ (a b c : Point) (L : Line), between a b c ∧ sameSide a c L → sameSide a b L",
    ),
    (
        "pasch_2",
        "∀ (a b c : Point) (L : Line), between a b c ∧ onLine a L ∧ ¬(onLine b L) → "
        "sameSide b c L",
    ),
    (
        "pasch_3",
        "∀ (a b c : Point) (L : Line), between a b c ∧ onLine b L → ¬(sameSide a c L)",
    ),
    (
        "pasch_4",
        "∀ (a b c : Point) (L M : Line), L ≠ M ∧ onLine b L ∧ onLine b M ∧ "
        "distinctPointsOnLine a c M ∧ a ≠ b ∧ c ≠ b ∧ ¬(sameSide a c L) → between a b c",
    ),
    (
        "triple_incidence_1",
        "∀ (L M N : Line) (a b c d : Point), onLine a L ∧ onLine a M ∧ onLine a N ∧ "
        "onLine b L ∧ onLine c M ∧ onLine d N ∧ sameSide c d L ∧ sameSide b c N → "
        "¬(sameSide b d M)",
    ),
    (
        "triple_incidence_2",
        "∀ (L M N : Line) (a b c d : Point), onLine a L ∧ onLine a M ∧ onLine a N ∧ "
        "onLine b L ∧ onLine c M ∧ onLine d N ∧ sameSide c d L ∧ ¬(sameSide b d M) ∧ "
        "¬(onLine d M) ∧ b ≠ a → sameSide b c N",
    ),
    (
        "triple_incidence_3",
        "∀ (L M N : Line) (a b c d e : Point), onLine a L ∧ onLine a M ∧ onLine a N ∧ "
        "onLine b L ∧ onLine c M ∧ onLine d N ∧ sameSide c d L ∧ sameSide b c N ∧ "
        "sameSide d e M ∧ sameSide c e N → sameSide c e L",
    ),
    (
        "circle_line_intersections",
        "∀ (a b c : Point) (L : Line) (α : Circle), onLine a L ∧ onLine b L ∧ "
        "onLine c L ∧ insideCircle a α ∧ onCircle b α ∧ onCircle c α ∧ b ≠ c → "
        "between b a c",
    ),
    (
        "circle_points_between",
        "∀ (a b c : Point) (α : Circle), ¬(outsideCircle a α) ∧ ¬(outsideCircle b α) ∧ "
        "between a c b → insideCircle c α",
    ),
    (
        "circle_points_extend",
        "∀ (a b c : Point) (α : Circle), ¬(outsideCircle a α) ∧ ¬(insideCircle c α) ∧ "
        "between a c b → outsideCircle b α",
    ),
    (
        "circles_intersections_diff_side",
        "∀ (a b c d : Point) (α β : Circle) (L : Line), α ≠ β ∧ onCircle c α ∧ "
        "onCircle c β ∧ onCircle d α ∧ onCircle d β ∧ c ≠ d ∧ isCentre a α ∧ "
        "isCentre b β ∧ onLine a L ∧ onLine b L → ¬(sameSide c d L)",
    ),
    (
        "intersection_lines_opposing",
        "∀ (a b : Point) (L M : Line), opposingSides a b L ∧ onLine a M ∧ onLine b M → "
        "intersectsLine L M",
    ),
    (
        "intersection_lines_common_point",
        "∀ (a : Point) (L M : Line), onLine a L ∧ onLine a M ∧ L ≠ M → intersectsLine L M",
    ),
    (
        "parallel_line_unique",
        "∀ (a : Point) (L M N : Line), ¬(onLine a L) ∧ onLine a M ∧ onLine a N ∧ "
        "¬(intersectsLine L M) ∧ ¬(intersectsLine L N) → M = N",
    ),
    (
        "intersection_symm",
        "∀ (L M : Line), intersectsLine L M → intersectsLine M L",
    ),
    (
        "intersection_circle_line_1",
        "∀ (a b : Point) (α : Circle) (L : Line), ¬(outsideCircle a α) ∧ "
        "¬(outsideCircle b α) ∧ opposingSides a b L → intersectsCircle L α",
    ),
    (
        "intersection_circle_line_2",
        "∀ (a : Point) (α : Circle) (L : Line), insideCircle a α ∧ onLine a L → "
        "intersectsCircle L α",
    ),
    (
        "intersection_circle_circle_1",
        "∀ (a b : Point) (α β : Circle), onCircle a α ∧ onCircle b α ∧ "
        "insideCircle a β ∧ outsideCircle b β → intersectsCircle α β",
    ),
    (
        "intersection_circle_circle_2",
        "∀ (a b : Point) (α β : Circle), onCircle a α ∧ insideCircle b α ∧ "
        "insideCircle a β ∧ onCircle b β → intersectsCircle α β",
    ),
    (
        "parallelogram_same_side",
        "∀ (a b c d : Point) (AB CD AC BD : Line), formParallelogram a b c d AB CD AC BD → "
        "sameSide b d AC ∧ sameSide c d AB ∧ sameSide a b CD",
    ),
]

METRIC = [
    ("zero_segment_if", "∀ (a b : Point), |(a--b)| = 0 → a = b"),
    ("zero_segment_onlyif", "∀ (a b : Point), a = b → |(a--b)| = 0"),
    ("segment_gte_zero", "∀ (a b : Point), 0 ≤ |(a--b)|"),
    ("segment_symmetric", "∀ (a b : Point), |(a--b)| = |(b--a)|"),
    (
        "angle_symm",
        "∀ (a b c : Point), a ≠ b ∧ b ≠ c → ∠ a:b:c = ∠ c:b:a",
    ),
    (
        "angle_range",
        "∀ (a b c : Point), 0 ≤ ∠ a:b:c ∧ ∠ a:b:c ≤ ∟ + ∟",
    ),
    ("degenerated_area", "∀ (a b : Point), Triangle.area △ a:a:b = 0"),
    ("area_gte_zero", "∀ (a b c : Point), 0 ≤ Triangle.area △ a:b:c"),
    (
        "area_symm_1",
        "∀ (a b c : Point), Triangle.area △ a:b:c = Triangle.area △ c:a:b",
    ),
    (
        "area_symm_2",
        "∀ (a b c : Point), Triangle.area △ a:b:c = Triangle.area △ a:c:b",
    ),
    (
        "area_congruence",
        "∀ (a b c a' b' c' : Point), |(a--b)| = |(a'--b')| ∧ |(b--c)| = |(b'--c')| ∧ "
        "|(c--a)| = |(c'--a')| ∧ ∠ a:b:c = ∠ a':b':c' ∧ ∠ b:c:a = ∠ b':c':a' ∧ "
        "∠ c:a:b = ∠ c':a':b' → Triangle.area △ a:b:c = Triangle.area △ a':b':c'",
    ),
]

TRANSFER = [
    (
        "between_if",
        "∀ (a b c : Point), between a b c → |(a--b)| + |(b--c)| = |(a--c)|",
    ),
    (
        "equal_circles",
        "∀ (a b c : Point) (α β : Circle), isCentre a α ∧ isCentre a β ∧ onCircle b α ∧ "
        "onCircle c β ∧ |(a--b)| = |(a--c)| → α = β",
    ),
    (
        "point_on_circle_if",
        "∀ (a b c : Point) (α : Circle), isCentre a α ∧ onCircle b α ∧ "
        "|(a--c)| = |(a--b)| → onCircle c α",
    ),
    (
        "point_on_circle_onlyif",
        "∀ (a b c : Point) (α : Circle), isCentre a α ∧ onCircle b α ∧ onCircle c α → "
        "|(a--c)| = |(a--b)|",
    ),
    (
        "point_in_circle_if",
        "∀ (a b c : Point) (α : Circle), isCentre a α ∧ onCircle b α ∧ "
        "|(a--c)| < |(a--b)| → insideCircle c α",
    ),
    (
        "point_in_circle_onlyif",
        "∀ (a b c : Point) (α : Circle), isCentre a α ∧ onCircle b α ∧ insideCircle c α → "
        "|(a--c)| < |(a--b)|",
    ),
    (
        "degenerated_angle_if",
        "∀ (a b c : Point) (L : Line), a ≠ b ∧ a ≠ c ∧ onLine a L ∧ onLine b L ∧ "
        "onLine c L ∧ ¬(between b a c) → ∠ b:a:c = 0",
    ),
    (
        "degenerated_angle_onlyif",
        "∀ (a b c : Point) (L : Line), a ≠ b ∧ a ≠ c ∧ onLine a L ∧ onLine b L ∧ "
        "∠ b:a:c = 0 → onLine c L ∧ ¬(between b a c)",
    ),
    (
        "sum_angles_if",
        "∀ (a b c d : Point) (L M : Line), onLine a L ∧ onLine a M ∧ onLine b L ∧ "
        "onLine c M ∧ a ≠ b ∧ a ≠ c ∧ ¬(onLine d L) ∧ ¬(onLine d M) ∧ L ≠ M ∧ "
        "∠ b:a:c = ∠ b:a:d + ∠ d:a:c → sameSide b d M ∧ sameSide c d L",
    ),
    (
        "sum_angles_onlyif",
        "∀ (a b c d : Point) (L M : Line), onLine a L ∧ onLine a M ∧ onLine b L ∧ "
        "onLine c M ∧ a ≠ b ∧ a ≠ c ∧ ¬(onLine d L) ∧ ¬(onLine d M) ∧ L ≠ M ∧ "
        "sameSide b d M ∧ sameSide c d L → ∠ b:a:c = ∠ b:a:d + ∠ d:a:c",
    ),
    (
        "perpendicular_if",
        "∀ (a b c d : Point) (L : Line), onLine a L ∧ onLine b L ∧ between a c b ∧ "
        "¬(onLine d L) ∧ ∠ a:c:d = ∠ d:c:b → ∠ a:c:d = ∟",
    ),
    (
        "perpendicular_onlyif",
        "∀ (a b c d : Point) (L : Line), onLine a L ∧ onLine b L ∧ between a c b ∧ "
        "¬(onLine d L) ∧ ∠ a:c:d = ∟ → ∠ a:c:d = ∠ d:c:b",
    ),
    (
        "flat_angle_if",
        "∀ (a b c : Point), a ≠ b ∧ b ≠ c ∧ ∠ a:b:c = ∟ + ∟ → between a b c",
    ),
    (
        "flat_angle_onlyif",
        "∀ (a b c : Point), between a b c → ∠ a:b:c = ∟ + ∟",
    ),
    (
        "equal_angles",
        "∀ (a b b' c c' : Point) (L M : Line), onLine a L ∧ onLine b L ∧ onLine b' L ∧ "
        "onLine a M ∧ onLine c M ∧ onLine c' M ∧ b ≠ a ∧ b' ≠ a ∧ c ≠ a ∧ c' ≠ a ∧ "
        "¬(between b a b') ∧ ¬(between c a c') → ∠ b:a:c = ∠ b':a:c'",
    ),
    (
        "lines_intersect",
        "∀ (a b c d : Point) (L M N : Line), onLine a L ∧ onLine b L ∧ onLine b M ∧ "
        "onLine c M ∧ onLine c N ∧ onLine d N ∧ b ≠ c ∧ sameSide a d M ∧ "
        "∠ a:b:c + ∠ b:c:d < ∟ + ∟ → ∃ e : Point, onLine e L ∧ onLine e N ∧ sameSide e a M",
    ),
    (
        "degenerated_area_if",
        "∀ (a b c : Point) (L : Line), distinctPointsOnLine a b L ∧ "
        "Triangle.area △ a:b:c = 0 → onLine c L",
    ),
    (
        "degenerated_area_onlyif",
        "∀ (a b c : Point) (L : Line), distinctPointsOnLine a b L ∧ onLine c L → "
        "Triangle.area △ a:b:c = 0",
    ),
    (
        "sum_areas_if",
        "∀ (a b c d : Point) (L : Line), onLine a L ∧ onLine b L ∧ onLine c L ∧ a ≠ b ∧ "
        "a ≠ c ∧ b ≠ c ∧ ¬(onLine d L) ∧ between a c b → "
        "Triangle.area △ a:c:d + Triangle.area △ d:c:b = Triangle.area △ a:d:b",
    ),
    (
        "sum_areas_onlyif",
        "∀ (a b c d : Point) (L : Line), onLine a L ∧ onLine b L ∧ onLine c L ∧ a ≠ b ∧ "
        "a ≠ c ∧ b ≠ c ∧ ¬(onLine d L) ∧ "
        "Triangle.area △ a:c:d + Triangle.area △ d:c:b = Triangle.area △ a:d:b → "
        "between a c b",
    ),
    (
        "parallelogram_area",
        "∀ (a b c d : Point) (AB CD AC BD : Line), formParallelogram a b c d AB CD AC BD → "
        "Triangle.area △ a:c:d + Triangle.area △ a:d:b = "
        "Triangle.area △ b:a:c + Triangle.area △ b:c:d",
    ),
    (
        "sum_parallelograms_area",
        "∀ (a b c d e f : Point) (AB CD AC BD : Line), "
        "formParallelogram a b c d AB CD AC BD ∧ between a e b ∧ between c f d → "
        "Triangle.area △ a:c:f + Triangle.area △ a:f:e + Triangle.area △ e:f:d + "
        "Triangle.area △ e:d:b = Triangle.area △ a:c:d + Triangle.area △ a:d:b",
    ),
    (
        "rectangle_area",
        "∀ (a b c d : Point) (AB CD AC BD : Line), "
        "formParallelogram a b c d AB CD AC BD ∧ ∠ a:c:d = ∟ → "
        "(Triangle.area △ a:c:d + Triangle.area △ a:b:d = |(a--b)| * |(a--c)|) ∧ "
        "(Triangle.area △ b:a:c + Triangle.area △ b:d:c = |(a--b)| * |(a--c)|)",
    ),
]

SUPERPOSITION = [
    (
        "superposition",
        "∀ (a b c d g h : Point) (AB BC AC L : Line), formTriangle a b c AB BC AC ∧ "
        "distinctPointsOnLine d g L ∧ ¬(onLine h L) → "
        "∃ (b' c' : Point) (BC' AC' : Line), ∠ b:a:c = ∠ b':d:c' ∧ "
        "∠ a:c:b = ∠ d:c':b' ∧ ∠ c:b:a = ∠ c':b':d ∧ |(a--b)| = |(d--b')| ∧ "
        "|(b--c)| = |(b'--c')| ∧ |(c--a)| = |(c'--d)| ∧ onLine b' L ∧ "
        "¬(between b' d g) ∧ sameSide c' h L ∧ distinctPointsOnLine b' c' BC' ∧ "
        "distinctPointsOnLine d c' AC'",
    ),
]

# Extension rules for the UniGeo-style congruent/similar predicates.  The
# elimination direction unfolds the predicate into its component equalities;
# the introduction rules axiomatize the SAS / SSS / ASA / AAS sufficient
# conditions (and AA for similarity) that define the predicates.
UNIGEO = [
    (
        "unigeo.congruent_if",
        "∀ (a b c d e f : Point), congruent △ a:b:c △ d:e:f → "
        "|(a--b)| = |(d--e)| ∧ |(b--c)| = |(e--f)| ∧ |(a--c)| = |(d--f)| ∧ "
        "∠ a:b:c = ∠ d:e:f ∧ ∠ a:c:b = ∠ d:f:e ∧ ∠ b:a:c = ∠ e:d:f",
    ),
    (
        "unigeo.similar_if",
        "∀ (a b c d e f : Point), similar △ a:b:c △ d:e:f → "
        "|(a--b)| / |(d--e)| = |(b--c)| / |(e--f)| ∧ "
        "|(b--c)| / |(e--f)| = |(c--a)| / |(f--d)| ∧ "
        "∠ a:b:c = ∠ d:e:f ∧ ∠ a:c:b = ∠ d:f:e ∧ ∠ b:a:c = ∠ e:d:f",
    ),
    (
        "unigeo.sas",
        "∀ (a b c d e f : Point), |(a--b)| = |(d--e)| ∧ ∠ b:a:c = ∠ e:d:f ∧ "
        "|(a--c)| = |(d--f)| → congruent △ a:b:c △ d:e:f",
    ),
    (
        "unigeo.sss",
        "∀ (a b c d e f : Point), |(a--b)| = |(d--e)| ∧ |(b--c)| = |(e--f)| ∧ "
        "|(a--c)| = |(d--f)| → congruent △ a:b:c △ d:e:f",
    ),
    (
        "unigeo.asa",
        "∀ (a b c d e f : Point), ∠ b:a:c = ∠ e:d:f ∧ |(a--b)| = |(d--e)| ∧ "
        "∠ a:b:c = ∠ d:e:f → congruent △ a:b:c △ d:e:f",
    ),
    (
        "unigeo.aas",
        "∀ (a b c d e f : Point), ∠ b:a:c = ∠ e:d:f ∧ ∠ a:b:c = ∠ d:e:f ∧ "
        "|(b--c)| = |(e--f)| → congruent △ a:b:c △ d:e:f",
    ),
    (
        "unigeo.similar_aa",
        "∀ (a b c d e f : Point), ∠ b:a:c = ∠ e:d:f ∧ ∠ a:b:c = ∠ d:e:f → "
        "similar △ a:b:c △ d:e:f",
    ),
]

#: the construction rules also available to the equivalence-mode engine
EQUIVALENCE_CONSTRUCTION_RULES = (
    "arbitrary_point",
    "distinct_points",
    "line_nonempty",
    "exists_point_between_points_on_line",
    "distinct_point_same_side",
    "exists_point_opposite",
    "exists_point_on_circle",
    "line_from_points",
    "intersection_lines",
)

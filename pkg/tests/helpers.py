"""Instance generators shared by the unit and acceptance tests."""

from opdec.fincat import (arrow_category, coproduct, empty_category, iter_functors,
                          local_terminal_choices, terminal_category)
from opdec.moddec import (LtOver, check_coalgebra_condition, diagonal_fillers,
                          is_pi0_bijective, is_pi0_cartesian, over_s_instances)


def small_shapes():
    one = terminal_category()
    two_points, _ = coproduct([one, one])
    return [empty_category(), one, arrow_category(), two_points]


def orthogonality_squares(shapes=None):
    """Every square ``r∘u = v∘l`` with ``l`` pi0-bijective and ``r`` pi0-cartesian."""
    shapes = small_shapes() if shapes is None else shapes
    pairs = [(A, B) for A in shapes for B in shapes]
    lefts = [l for A, B in pairs for l in iter_functors(A, B) if is_pi0_bijective(l)]
    rights = [r for C, D in pairs for r in iter_functors(C, D) if is_pi0_cartesian(r)]
    for l in lefts:
        for r in rights:
            for u in iter_functors(l.source, r.source):
                for v in iter_functors(l.target, r.target):
                    if r.compose(u) == v.compose(l):
                        yield l, r, u, v


def lt_over_instances(samples, max_card):
    """Objects over the skeleton whose chosen terminals have cardinality 1."""
    for s in samples:
        choices = local_terminal_choices(s.cat)
        for V in over_s_instances(s.cat, max_card):
            for L in choices:
                W = LtOver(V, L)
                if check_coalgebra_condition(W).ok:
                    yield s.name, W


def fillers(square):
    return diagonal_fillers(*square)

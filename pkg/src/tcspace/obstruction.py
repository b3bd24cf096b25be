"""Degree obstructions against isometric l_infty^k subspaces.

If TC(X) contains an isometric copy of l_infty^k, then for any k vectors
realizing it there are at least 2^(k-2) pairwise disjoint optimal roadmaps
for each of them, forcing every vertex touched by their supports to have
degree at least 2^(k-2) in the canonical graph.  The contrapositive yields
certificates: a graph whose maximum degree stays below the threshold cannot
host such a copy.  For recursive families (diamonds, edge-of-composition
graphs) the argument peels generations: newest-generation vertices have
small degree, so supports live in the previous generation, which embeds
isometrically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NullProblem, PeelNotApplicable, PreconditionFailed
from .graph import CanonicalGraph, canonical_graph
from .rational import ONE, ZERO
from .transport import Roadmap, maximal_support, tc_norm
from .vectors import TransportationProblem

RULED_OUT = "ruled_out"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LinftyCandidate:
    """k transportation problems proposed as an l_infty^k unit vector basis.

    Vectors must be normalized; use :meth:`normalized` to build a candidate
    from arbitrary nonzero problems.
    """

    problems: tuple[TransportationProblem, ...]

    def __post_init__(self):
        if len(self.problems) < 2:
            raise PreconditionFailed("need at least two vectors")
        for f in self.problems:
            if tc_norm(f)[0] != 1:
                raise PreconditionFailed("candidate vectors must have norm 1")

    @classmethod
    def normalized(cls, problems) -> LinftyCandidate:
        scaled = []
        for f in problems:
            norm, _ = tc_norm(f)
            if norm == 0:
                raise NullProblem("cannot normalize the zero problem")
            scaled.append(f.scale(1 / norm))
        return cls(tuple(scaled))

    @property
    def k(self) -> int:
        return len(self.problems)

    @property
    def graph(self) -> CanonicalGraph:
        return self.problems[0].graph

    def combine(self, coeffs) -> TransportationProblem:
        out = TransportationProblem.zero(self.graph)
        for f, a in zip(self.problems, coeffs):
            if a != 0:
                out = out + f.scale(a)
        return out


def strongly_disjoint(f: TransportationProblem, g: TransportationProblem) -> bool:
    """Whether the maximal optimal supports of f and g share no edge."""
    if f.is_zero() or g.is_zero():
        raise NullProblem("strong disjointness needs nonzero problems")
    ef, _ = maximal_support(f)
    eg, _ = maximal_support(g)
    return not (ef & eg)


@dataclass(frozen=True)
class SignPatternReport:
    """Outcome of the pairwise strong-disjointness scan over sign vectors."""

    ok: bool
    pairs_checked: int
    failing_pair: tuple[tuple[int, ...], tuple[int, ...]] | None
    shared_edges: frozenset[int] | None
    reason: str | None = None


def check_sign_pattern_disjointness(cand: LinftyCandidate) -> SignPatternReport:
    """Check strong disjointness for every conflicting pair of sign vectors.

    Two +-1 combinations that agree in some coordinate and disagree in
    another must be strongly disjoint whenever the candidate really spans an
    isometric l_infty^k.  A combination that collapses to the zero problem
    (impossible for a genuine candidate, whose combinations all have norm 1)
    fails the pair on the spot; otherwise the scan stops at the first pair
    of overlapping supports.
    """
    k = cand.k
    signs = list(itertools.product((1, -1), repeat=k))
    combos = {theta: cand.combine(theta) for theta in signs}
    supports: dict[tuple[int, ...], frozenset[int]] = {}
    checked = 0
    for a, b in itertools.combinations(signs, 2):
        agree = any(x == y for x, y in zip(a, b))
        disagree = any(x == -y for x, y in zip(a, b))
        if not (agree and disagree):
            continue
        checked += 1
        degenerate = [t for t in (a, b) if combos[t].is_zero()]
        if degenerate:
            return SignPatternReport(
                False, checked, (a, b), None,
                f"combination {degenerate[0]} is the zero problem")
        for t in (a, b):
            if t not in supports:
                supports[t], _ = maximal_support(combos[t])
        shared = supports[a] & supports[b]
        if shared:
            return SignPatternReport(False, checked, (a, b), frozenset(shared),
                                     "maximal supports overlap")
    return SignPatternReport(True, checked, None, None)


def _sign_vectors_pass(cand: LinftyCandidate) -> bool:
    return all(
        tc_norm(cand.combine(theta))[0] == 1
        for theta in itertools.product((1, -1), repeat=cand.k)
    )


def verify_linfty_basis(cand: LinftyCandidate, grid_resolution: int = 5) -> bool:
    """Exact sign-vector norms plus a rational-grid lower-bound probe.

    The norm equals 1 on all 2^k sign vectors iff (with the norm-1
    normalization and convexity) every combination obeys the l_infty upper
    bound; the grid then probes the lower bound ||sum a_i e_i|| >= max|a_i|
    at grid_resolution rational values per axis.
    """
    if not _sign_vectors_pass(cand):
        return False
    if grid_resolution < 2:
        raise PreconditionFailed("grid resolution must be at least 2")
    axis = [Fraction(2 * i - (grid_resolution - 1), grid_resolution - 1)
            for i in range(grid_resolution)]
    for coeffs in itertools.product(axis, repeat=cand.k):
        peak = max(abs(a) for a in coeffs)
        if peak == 0:
            continue
        if tc_norm(cand.combine(coeffs))[0] < peak:
            return False
    return True


def count_disjoint_roadmaps(cand: LinftyCandidate, j: int) -> int:
    """Pairwise-disjoint optimal roadmaps for vector j from sign splittings.

    For each assignment of signs to the other coordinates (one anchor fixed
    at +1), half the difference of optimal roadmaps for the two combinations
    that flip coordinate j is itself an optimal roadmap for vector j; these
    are pairwise disjoint for a genuine candidate, giving 2^(k-2) of them.
    """
    k = cand.k
    if not 0 <= j < k:
        raise PreconditionFailed(f"index {j} out of range")
    if not _sign_vectors_pass(cand):
        raise PreconditionFailed("candidate fails the sign-vector norms")
    anchor = 0 if j != 0 else 1
    rest = [i for i in range(k) if i not in (anchor, j)]
    roadmaps: list[Roadmap] = []
    for theta in itertools.product((1, -1), repeat=len(rest)):
        coeffs = [ZERO] * k
        coeffs[anchor] = ONE
        for pos, s in zip(rest, theta):
            coeffs[pos] = Fraction(s)
        coeffs[j] = ONE
        _, p_plus = tc_norm(cand.combine(coeffs))
        coeffs[j] = -ONE
        _, p_minus = tc_norm(cand.combine(coeffs))
        r = Roadmap((p_plus.vec - p_minus.vec).scale(Fraction(1, 2)))
        assert r.problem() == cand.problems[j]
        assert r.cost() == 1, "splitting produced a non-optimal roadmap"
        roadmaps.append(r)
    kept: list[Roadmap] = []
    for r in roadmaps:
        if all(not (r.support() & other.support()) for other in kept):
            kept.append(r)
    return len(kept)


# --- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Outcome of the degree obstruction for a given k.

    RuledOut means no isometric l_infty^k copy can exist; Inconclusive means
    the degree argument does not decide (it never claims containment).
    """

    verdict: str
    k: int
    threshold: int
    max_degree: int
    peeling: tuple[str, ...]
    reason: str

    @property
    def ruled_out(self) -> bool:
        return self.verdict == RULED_OUT

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "verdict": self.verdict,
            "threshold": self.threshold,
            "degrees": {"max": self.max_degree},
            "peeling": list(self.peeling),
            "reason": self.reason,
        }


def certify_no_linfty(graph: CanonicalGraph, k: int, peel: bool = False,
                      family=None) -> Certificate:
    """Degree certificate that TC(X) has no isometric l_infty^k copy.

    Without peeling: ruled out iff every vertex degree is below 2^(k-2).
    With peeling (recursive families only, identified by the generation
    metadata of a FamilyDescriptor): repeatedly restrict to the previous
    generation while every high-degree vertex lies there, ruling out when
    some level's maximum degree drops below the threshold.
    """
    if k < 3:
        raise PreconditionFailed("degree certificates need k >= 3")
    threshold = 2 ** (k - 2)
    if not peel:
        md = graph.max_degree()
        if md < threshold:
            return Certificate(RULED_OUT, k, threshold, md, (),
                               f"max degree {md} < {threshold}")
        return Certificate(INCONCLUSIVE, k, threshold, md, (),
                           f"max degree {md} reaches {threshold}")

    if family is None or getattr(family, "generations", None) is None:
        raise PeelNotApplicable("peeling needs a recursive family descriptor")
    gens = family.generations
    names = graph.space.points
    if set(gens) != set(names):
        raise PeelNotApplicable("descriptor does not match the graph's points")

    level = max(gens.values())
    current = graph
    space = graph.space
    gen_of = [gens[name] for name in space.points]
    visited: list[str] = []
    while True:
        label = family.level_label(level)
        visited.append(label)
        md = current.max_degree()
        if md < threshold:
            return Certificate(RULED_OUT, k, threshold, md, tuple(visited),
                               f"max degree {md} < {threshold} at {label}")
        if level == 0:
            return Certificate(INCONCLUSIVE, k, threshold, md, tuple(visited),
                               f"base level {label} still has degree {md}")
        newest = [v for v in range(current.n) if gen_of[v] == level]
        blockers = [v for v in newest if current.degree(v) >= threshold]
        if blockers:
            name = current.space.points[blockers[0]]
            return Certificate(
                INCONCLUSIVE, k, threshold, md, tuple(visited),
                f"generation-{level} vertex {name} has degree "
                f"{current.degree(blockers[0])} >= {threshold}")
        keep = [v for v in range(current.n) if gen_of[v] < level]
        space = current.space.restrict(keep)
        gen_of = [gen_of[v] for v in keep]
        current = canonical_graph(space)
        level -= 1

"""Exact-triangle rank bookkeeping, unit fate, and verdicts.

Everything here is ungraded linear algebra over Z/2 at the level of ranks:
an exact triangle with known edge map image rank f relates three ranks by
rank M = k + l - 2f.  The twist triangle and the evaluation-cone triangle
are instances; comparing them decides whether the distinguished unit
generator u survives wrapping, which in turn decides whether the wrapped
groups vanish.  Each derivation step is recorded as a tagged trace step so
reports can be compared literally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (ImageTooLarge, Inconsistent, IncompleteBasis,
                     LefbenchError, MissingClass, Undecidable)
from .fibration import Fibration, TotalSpaceFiber
from .oracle import FiberOracle, matching_floer_rank


@dataclass(frozen=True)
class TraceStep:
    tag: str
    text: str

    def render(self) -> str:
        return f"[{self.tag}] {self.text}"


def triangle_rank(k: int, l: int, f: int) -> int:
    """Rank of the third object in an exact triangle with edge ranks k, l
    and edge-map image rank f."""
    if min(k, l, f) < 0:
        raise LefbenchError("ranks are nonnegative")
    if f > min(k, l):
        raise ImageTooLarge(
            f"image rank {f} exceeds min({k}, {l})")
    return k + l - 2 * f


def pair_of_pants_image_rank(o: FiberOracle, a: str, b: str) -> int:
    """Image rank of the product HF(a,b) x HF(b,a) -> HF(b,b).

    Only the two certified situations are decided: isotopic cycles (the
    product is onto the rank-2 group) and witnessed non-isomorphism (the
    image is exactly the span of the fundamental class: it hits it by
    duality and misses the identity because the would-be preimage factors
    through the vanishing witness group).  Everything else is Undecidable.
    """
    if not o.rank_known(b, b) or o.rank_of(b, b) != 2:
        raise Undecidable(
            f"pair-of-pants image rank needs rank({b},{b}) = 2")
    status = o.isomorphic_objects(a, b)
    if status.kind == "yes":
        return 2
    if status.kind == "no":
        return 1
    raise Undecidable(
        f"isomorphism status of ({a},{b}) is unknown; the image rank is"
        " certified in no other case")


def seidel_twist_rank(o: FiberOracle, a: str, b: str) -> int:
    """Rank of HF(b, twist_a b) from the twist triangle."""
    k = o.rank_of(a, b) * o.rank_of(b, a)
    l = o.rank_of(b, b)
    f = 0 if k == 0 else pair_of_pants_image_rank(o, a, b)
    return triangle_rank(k, l, f)


NONZERO_EV_WARNING = (
    "NonzeroEvViolation: the evaluation class must be nonzero, but the"
    " thimble pair has rank 0, forcing a zero evaluation map")


@dataclass(frozen=True)
class FsHomRanks:
    hom_bb: int
    hom_ab: int
    hom_b1b: int
    warnings: tuple[str, ...] = ()

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.hom_bb, self.hom_ab, self.hom_b1b)


def fs_hom_ranks(f: Fibration, o: FiberOracle | None = None) -> FsHomRanks:
    """The three directed-category ranks at the bottom of the tower.

    hom_bb is rank one, generated by the unit at the single self-contact.
    hom_ab is computed geometrically from the matching data in the fiber
    (demanded exact) and cross-checked against the declared rank when one
    exists.  hom_b1b is the evaluation-cone triangle applied to the square
    of hom_ab with image rank one (the evaluation class is nonzero whenever
    the pair rank allows it).
    """
    if o is None:
        o = f.oracle
    if len(f.crits) != 2:
        raise Undecidable(
            "the tower calculus needs exactly two thimbles; got"
            f" {len(f.crits)} critical values")
    if not isinstance(f.fiber, TotalSpaceFiber):
        raise Undecidable(
            "the thimble pair rank is computed from matching data in the"
            " fiber, which needs the fiber to be a total space")
    aux = f.fiber.fibration
    if aux.oracle is None:
        raise Undecidable("the inner fibration carries no rank oracle")
    label_a, label_b = (c.cycle_label for c in f.crits)
    x = aux.object_named(label_a)
    y = aux.object_named(label_b)
    if x is None or y is None:
        raise MissingClass(
            f"labels {label_a!r}, {label_b!r} do not both name objects on"
            f" {aux.name!r}")
    hom_ab = matching_floer_rank(aux, x, y, aux.oracle,
                                 demand_exact=True).value
    if o is not None and o.rank_known(label_a, label_b):
        declared = o.rank_of(label_a, label_b)
        if declared != hom_ab:
            raise Inconsistent(
                f"declared rank({label_a},{label_b}) = {declared} but the"
                f" matching data gives {hom_ab}")

    warnings: tuple[str, ...] = ()
    f_ev = 1 if hom_ab > 0 else 0
    if hom_ab == 0:
        warnings = (NONZERO_EV_WARNING,)
    hom_b1b = triangle_rank(1, hom_ab * hom_ab, f_ev)
    return FsHomRanks(1, hom_ab, hom_b1b, warnings)


class UnitFate(enum.Enum):
    SURVIVES = "Survives"
    DIES = "Dies"


def unit_fate(rank_total: int, rank_quotient: int) -> UnitFate:
    """Fate of u from the ranks of the total and quotient complexes.

    The short exact sequence 0 -> <u> -> C -> C_quot -> 0 has no
    differential out of u, so over Z/2 the total rank is the quotient rank
    plus one (u survives) or minus one (u is hit by the connecting map);
    anything else means the input ranks are wrong.
    """
    if rank_total < 0 or rank_quotient < 0:
        raise LefbenchError("ranks are nonnegative")
    if rank_total == rank_quotient + 1:
        return UnitFate.SURVIVES
    if rank_total == rank_quotient - 1:
        return UnitFate.DIES
    raise Inconsistent(
        f"total rank {rank_total} and quotient rank {rank_quotient} differ"
        " by something other than one; the unit subcomplex forces a"
        " difference of exactly one")


@dataclass(frozen=True)
class HWVerdict:
    nonzero: bool
    steps: tuple[TraceStep, ...]

    def render(self) -> str:
        return "nonzero" if self.nonzero else "zero"


def hw_verdict(fate: UnitFate) -> HWVerdict:
    """Wrapped-group verdict for a thimble's self-Hom tower."""
    if fate is UnitFate.DIES:
        step = TraceStep(
            "unit-death",
            "u is hit by the connecting differential at the first wrapping"
            " level and its continuation images stay exact, so the unit of"
            " the limit group is zero; a unital group with zero unit"
            " vanishes")
        return HWVerdict(False, (step,))
    step = TraceStep(
        "unit-survival",
        "u is not a boundary at the first wrapping level and no later"
        " differential can reach it, so the unit persists in the limit and"
        " the group is nonzero")
    return HWVerdict(True, (step,))


def off_diagonal_verdict(diagonal: HWVerdict, o: FiberOracle,
                         a: str, b: str) -> HWVerdict:
    """Verdict for the mixed-pair wrapped group from the diagonal one.

    The mixed group is a module over the diagonal one, so a vanishing
    diagonal forces it to vanish.  A nonvanishing conclusion needs a closed
    Lagrangian sphere witness, which the calculus certifies exactly when
    the two vanishing cycles are isotopic (the matching sphere closes up).
    """
    if not diagonal.nonzero:
        step = TraceStep(
            "module-vanishing",
            "the mixed wrapped group is a module over the vanishing"
            " diagonal group, so it vanishes as well")
        return HWVerdict(False, (step,))
    if o.isomorphic_objects(a, b).kind == "yes":
        step = TraceStep(
            "sphere-witness",
            f"the cycles {a} and {b} are isotopic, so the matching sphere"
            " closes up to a closed exact Lagrangian whose Floer group"
            " forces the mixed wrapped group to be nonzero")
        return HWVerdict(True, (step,))
    raise Undecidable(
        "a nonvanishing mixed wrapped group is certified only through a"
        " closed sphere witness, which needs isotopic cycles")


@dataclass(frozen=True)
class ObstructionResult:
    kind: str                      # "Obstructed" | "NoConclusion"
    steps: tuple[TraceStep, ...]


def closed_lagrangian_obstruction(
        hw_diagonal: dict[str, HWVerdict | None]) -> ObstructionResult:
    """Existence obstruction for closed exact Lagrangians.

    A closed exact Lagrangian would have nonzero self-Floer cohomology,
    computed by a spectral sequence whose first page is built from the
    wrapped groups of a full thimble basis; if every diagonal group
    vanishes the page vanishes and no such Lagrangian exists.
    """
    missing = sorted(name for name, v in hw_diagonal.items() if v is None)
    if missing:
        raise IncompleteBasis(
            f"no wrapped verdict for thimble(s) {', '.join(missing)}")
    if not hw_diagonal:
        raise IncompleteBasis("empty thimble basis")
    if all(not v.nonzero for v in hw_diagonal.values()):
        step = TraceStep(
            "obstruction",
            "every diagonal wrapped group of the thimble basis vanishes, so"
            " the spectral sequence converging to the self-Floer cohomology"
            " of any closed exact Lagrangian has vanishing first page; such"
            " a Lagrangian would have nonzero self-Floer cohomology, so"
            " none exists")
        return ObstructionResult("Obstructed", (step,))
    step = TraceStep(
        "obstruction",
        "some diagonal wrapped group is nonzero, so the spectral-sequence"
        " page is nonzero and no obstruction follows")
    return ObstructionResult("NoConclusion", (step,))


# --------------------------------------------------------------------------
# whole-scenario analysis
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioRanks:
    labels: tuple[str, str]              # cycle labels of the two thimbles
    hf_pair: int                         # rank between the two cycles
    pants_image: int
    twist: int
    fs: FsHomRanks
    fate: UnitFate
    diagonal: tuple[tuple[str, HWVerdict], ...]
    off_diagonal: HWVerdict
    obstruction: ObstructionResult
    trace: tuple[TraceStep, ...]


def _directed_twist(o: FiberOracle, twister: str, twistee: str) -> tuple[int, int, int]:
    """(pair product rank, pants image rank, twist rank) for one direction."""
    k = o.rank_of(twister, twistee) * o.rank_of(twistee, twister)
    pants = 0 if k == 0 else pair_of_pants_image_rank(o, twister, twistee)
    return k, pants, triangle_rank(k, o.rank_of(twistee, twistee), pants)


def analyze(f: Fibration, o: FiberOracle | None = None) -> ScenarioRanks:
    """Run the full rank pipeline for a two-thimble scenario.

    The calculus is run once per thimble (each is twisted by the other to
    settle the fate of its own unit).  The reported trace follows the
    distinguished direction: the second thimble twisted by the first.
    """
    if o is None:
        o = f.oracle
    if o is None:
        raise Undecidable(f"fibration {f.name!r} carries no rank oracle")
    if len(f.crits) != 2:
        raise Undecidable("the scenario analysis needs exactly two thimbles")
    a, b = (c.cycle_label for c in f.crits)

    trace: list[TraceStep] = []
    k, pants, twist = _directed_twist(o, a, b)
    trace.append(TraceStep(
        "twist-triangle",
        f"rank({a},{b}) x rank({b},{a}) = {k} maps onto an image of rank"
        f" {pants} inside rank({b},{b}) = {o.rank_of(b, b)}, so the twisted"
        f" group has rank {k} + {o.rank_of(b, b)} - 2*{pants} = {twist}"))

    fs = fs_hom_ranks(f, o)
    trace.append(TraceStep(
        "evaluation-cone",
        f"the once-wrapped thimble is a cone on the evaluation map, giving"
        f" hom ranks ({fs.hom_bb}, {fs.hom_ab}, {fs.hom_b1b}): "
        f"{fs.hom_bb} + {fs.hom_ab}^2 - 2*1 = {fs.hom_b1b}"))

    fate = unit_fate(fs.hom_b1b, twist)
    trace.append(TraceStep(
        "unit-fate",
        f"the total complex has rank {fs.hom_b1b} against quotient rank"
        f" {twist}, so the unit generator u {fate.value.lower()}"))

    verdict_b = hw_verdict(fate)
    trace.extend(verdict_b.steps)

    # Same calculus with the roles swapped settles the other diagonal
    # entry.  fs_hom_ranks is symmetric in the two thimbles (the pair rank
    # is an unordered geometric count), so only the twist recomputes.
    _, _, twist_a = _directed_twist(o, b, a)
    verdict_a = hw_verdict(unit_fate(fs.hom_b1b, twist_a))

    diagonal = ((b, verdict_b), (a, verdict_a))
    off = off_diagonal_verdict(
        verdict_a if not verdict_a.nonzero else verdict_b, o, a, b)
    trace.extend(off.steps)

    obstruction = closed_lagrangian_obstruction(dict(diagonal))
    trace.extend(obstruction.steps)

    return ScenarioRanks(
        labels=(a, b), hf_pair=o.rank_of(a, b), pants_image=pants,
        twist=twist, fs=fs, fate=fate, diagonal=diagonal, off_diagonal=off,
        obstruction=obstruction, trace=tuple(trace))

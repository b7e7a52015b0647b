"""
The three worked examples, with their data as stated and the
verdict claimed for each.
"""

from dataclasses import dataclass
from typing import Optional

from pyquasiiso.graph import GraphSpec
from pyquasiiso.numeric import EventuallyPolynomialSeq
from pyquasiiso.space import MeasureSpec, WeightSpec

__all__ = ["WorkedExample", "E1", "E2", "E3", "EXAMPLES"]


@dataclass(frozen=True)
class WorkedExample:
    """A built-in example: its spec, the (k, m) it is stated for and its claim."""

    name: str
    measure: MeasureSpec
    k: int
    m: int
    claim: str
    claimed_verdict: bool = True
    weight: Optional[WeightSpec] = None
    remark: str = ""

    @property
    def weighted(self) -> bool:
        return self.weight is not None


_G1 = GraphSpec(3, (2, 0, 0))
_G2 = GraphSpec(3, (2, 1, 0))

E1 = WorkedExample(
    name="e1",
    measure=MeasureSpec(
        _G1,
        ("5/3", "1/3", "1"),
        {
            (1, 1): EventuallyPolynomialSeq(["1"], ["1"]),
            (1, 2): EventuallyPolynomialSeq(["1"], ["1"]),
        },
    ),
    k=1,
    m=2,
    claim="the composition operator C is quasi-2-isometry",
)

E2 = WorkedExample(
    name="e2",
    measure=MeasureSpec(
        _G2,
        ("2", "1", "1"),
        {
            (1, 1): EventuallyPolynomialSeq(["1", "1"], ["1"]),
            (1, 2): EventuallyPolynomialSeq(["1", "1"], ["1"]),
            (2, 1): EventuallyPolynomialSeq(["1", "1"], ["1"]),
        },
    ),
    k=2,
    m=2,
    claim="C is 2-quasi-2-isometry",
)

# Beyond j = 1 the branch measure is 4, forced by pi_1^2 * mu = 1 with pi = 1/2.
E3 = WorkedExample(
    name="e3",
    measure=MeasureSpec(
        _G1,
        ("31/32", "11/12", "1"),
        {
            (1, 1): EventuallyPolynomialSeq(["1"], ["4"]),
            (1, 2): EventuallyPolynomialSeq(["1/3"], ["4"]),
        },
    ),
    weight=WeightSpec(
        _G1,
        ("1", "1", "1"),
        {
            (1, 1): WeightSpec.eventually_constant([], "1/2"),
            (1, 2): WeightSpec.eventually_constant([], "1/2"),
        },
    ),
    k=1,
    m=2,
    claim="W is quasi-2-isometry",
    remark=(
        "recomputing the three displayed circuit identities from the stated "
        "measure and weight gives nonzero values (5/16 at x_2 before "
        "normalization), so the stated data or displays contain a slip; "
        "the computed verdict is authoritative"
    ),
)

EXAMPLES = {example.name: example for example in (E1, E2, E3)}

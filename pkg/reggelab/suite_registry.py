from dataclasses import dataclass

from .types import Suite
from .verify import (
    BacklundSuite,
    CMSuite,
    DimsSuite,
    DualitySuite,
    LemmaSuite,
    OracleSuite,
    OrbitSuite,
    OrthogonalitySuite,
    ReggeSuite,
    SphericalSuite,
    SuiteRunner,
    TheoremSuite,
    U3Suite,
)


@dataclass
class SuiteInfo:
    cls: type[SuiteRunner]
    bound: str
    description: str = ""
    mixed_modes: bool = False


suites = {
    Suite.Regge: SuiteInfo(
        cls=ReggeSuite,
        bound="max_label",
        description="6j value equals the value at the Regge image",
    ),
    Suite.Orbit: SuiteInfo(
        cls=OrbitSuite,
        bound="max_label",
        description="6j value is constant on the 144-element symmetry orbit",
    ),
    Suite.Oracle: SuiteInfo(
        cls=OracleSuite,
        bound="max_label",
        description="|U| from the Racah sum equals |U| from the k=2 coupling bases",
    ),
    Suite.U3: SuiteInfo(
        cls=U3Suite,
        bound="max_label",
        description="k=3 coupling bases agree with k=2 on the reduction",
    ),
    Suite.Duality: SuiteInfo(
        cls=DualitySuite,
        bound="max_label",
        description="det^p pairing matches coupling bases of mu and p - mu",
    ),
    Suite.CM: SuiteInfo(
        cls=CMSuite,
        bound="samples",
        description="Cayley-Menger determinant and triangle slacks are Regge invariant",
    ),
    Suite.Lemma: SuiteInfo(
        cls=LemmaSuite,
        bound="samples",
        description="Okamoto action on trace coordinates preserves the listed invariants",
        mixed_modes=True,
    ),
    Suite.Theorem: SuiteInfo(
        cls=TheoremSuite,
        bound="samples",
        description="Okamoto action on Hermitian triples is Regge on edge lengths",
        mixed_modes=True,
    ),
    Suite.Backlund: SuiteInfo(
        cls=BacklundSuite,
        bound="samples",
        description="Okamoto image of a series solution solves the shifted equation",
    ),
    Suite.Spherical: SuiteInfo(
        cls=SphericalSuite,
        bound="samples",
        description="Regge keeps random SU(2) tetrahedra spherically realizable",
    ),
    Suite.Orthogonality: SuiteInfo(
        cls=OrthogonalitySuite,
        bound="max_label",
        description="U matrices are exactly orthogonal",
    ),
    Suite.Dims: SuiteInfo(
        cls=DimsSuite,
        bound="max_label",
        description="GT counts match multiplicity-space dimensions for k=2 and k=3",
    ),
}

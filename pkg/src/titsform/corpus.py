"""Registry of the bundled example files and the vectors drawn on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .presentation import Document, parse_document
from .unitform import IntVector


@dataclass(frozen=True)
class Fixture:
    name: str
    filename: str
    vectors: dict[str, dict[str, int]] = field(default_factory=dict)
    note: str = ""

    def text(self) -> str:
        return resources.files("titsform.fixtures").joinpath(self.filename).read_text()

    def load(self) -> Document:
        return parse_document(self.text())

    def vector(self, key: str, labels) -> IntVector:
        d = self.vectors[key]
        return tuple(d[l] for l in labels)

    def path(self) -> str:
        return str(resources.files("titsform.fixtures").joinpath(self.filename))


def _v(**kw) -> dict[str, int]:
    return kw


_ex14_v = _v(t1=1, t2=1, n=2, l3=1, r3=1, w=2, c=4, e=2, l5=1, r5=1, s=2, b1=1, b2=1)
_ex14_u = _v(t1=2, t2=2, n=4, l3=1, r3=2, w=2, c=6, e=4, l5=1, r5=2, s=2, b1=1, b2=1)
_B_v = _v(x1=1, x2=1, m=1, s=1, t=1, c1=1, c2=1)
_B_y = _v(x1=1, x2=1, m=2, s=1, t=1, c1=0, c2=0)

FIXTURES: dict[str, Fixture] = {f.name: f for f in [
    Fixture("ex_1_4", "ex_1_4.quiver", {"v": _ex14_v, "u": _ex14_u},
            "locally maximal root v below the root u"),
    Fixture("ex_1_4_form", "ex_1_4.form", {"v": _ex14_v, "u": _ex14_u},
            "Tits form of ex_1_4 written out as a unit form"),
    Fixture("ex_1_5_1", "ex_1_5_1.form",
            {"v": _v(a=1, b=1, c4=4, c6=6, c8=8, c10=10, c12=12, r8=8, r4=4, d6=6)},
            "maximal omnipresent root with a coordinate 12"),
    Fixture("ex_1_5_2a", "ex_1_5_2a.form",
            {"v": _v(x1=1, x2=1, x3=1, cx=2, a=1, b=1, cy=2, y1=1, y2=1, y3=1)},
            "two exceptional indices joined by a dotted edge"),
    Fixture("ex_1_5_2b", "ex_1_5_2b.form", {"v": _v(a=1, b=1, m1=1, m2=1, m3=1, m4=1)},
            "two exceptional indices with three dotted edges"),
    Fixture("ex_1_5_3", "ex_1_5_3.form", {"v": _v(A=1, B=1, C=1, D=1, F=1, G=1, j=1)},
            "locally maximal root with one exceptional index of pairing 2"),
    Fixture("ex_1_5_4", "ex_1_5_4.form",
            {"left": _v(P=1, Q=2, R=2, S=1, T=2, U=2, V=1),
             "right": _v(P=2, Q=3, R=2, S=2, T=1, U=2, V=1)},
            "two maximal omnipresent roots"),
    Fixture("ex_1_5_5", "ex_1_5_5.quiver",
            {"v": _v(p1=1, p2=1, m=3, a=1, t=1, b=2, c=1, d=2, f=1, g=1, h=1)},
            "root that is not a dimension vector of an indecomposable"),
    Fixture("q_M", "q_M.quiver", {}, "complete quiver on four vertices"),
    Fixture("B11", "B11.quiver", {"v": _B_v, "y": _B_y}, "both terms of the relation"),
    Fixture("B10", "B10.quiver", {"v": _B_v, "y": _B_y},
            "B_lambda_mu with mu = 0 (recorded as tame, not of polynomial growth)"),
    Fixture("B01", "B01.quiver", {"v": _B_v, "y": _B_y},
            "B_lambda_mu with lambda = 0 (recorded as wild)"),
    Fixture("A1_n13", "A1_n13.quiver",
            {"v": _v(s=1, w1=1, w2=1, w3=1, x1=1, x2=1, y=1, y1=1, o=1, z1=2, z2=2, o2=1, bot=1)},
            "glueing type with two exceptional indices"),
    Fixture("A2", "A2.quiver",
            {"v": _v(a0=1, a1=2, b1=2, b2=2, b3=2, b4=2, b5=1, t=1, c1=2, o=2)},
            "maximal root with a unique exceptional index"),
    Fixture("kronecker2", "kronecker2.form", {}, "q_12 = -2"),
    Fixture("kronecker3", "kronecker3.form", {}, "q_12 = -3"),
    Fixture("A3", "A3.quiver", {}, "Dynkin chain"),
    Fixture("A2tilde", "A2tilde.form", {}, "Euclidean triangle"),
]}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None

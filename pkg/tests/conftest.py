from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from waring_eig.exactnum import GaussRat
from waring_eig.forms.binary import BForm
from waring_eig.forms.nform import NForm, compositions

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def rats(draw, height: int = 6):
    return GaussRat(draw(st.integers(-height, height))) / draw(st.integers(1, height))


@st.composite
def gauss(draw, height: int = 6):
    re = draw(st.integers(-height, height))
    im = draw(st.integers(-height, height))
    return GaussRat(re, im) / draw(st.integers(1, height))


@st.composite
def bforms(draw, min_degree: int = 1, max_degree: int = 6, nonzero: bool = True):
    d = draw(st.integers(min_degree, max_degree))
    cs = draw(st.lists(gauss(), min_size=d + 1, max_size=d + 1))
    if nonzero and not any(cs):
        cs[0] = GaussRat(1)
    return BForm(cs)


@st.composite
def nforms(draw, nvars: int | None = None, degree: int | None = None, max_degree: int = 4):
    n = nvars if nvars is not None else draw(st.integers(2, 4))
    d = degree if degree is not None else draw(st.integers(1, max_degree))
    terms = {}
    for a in compositions(d, n):
        if draw(st.booleans()):
            terms[a] = draw(gauss())
    return NForm(n, d, terms)


@st.composite
def rational_lines(draw, nvars: int = 2, height: int = 5):
    coords = draw(st.lists(st.integers(-height, height), min_size=nvars, max_size=nvars)
                  .filter(lambda v: any(v)))
    return [GaussRat(c) for c in coords]


# acceptance summary: one line per criterion at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

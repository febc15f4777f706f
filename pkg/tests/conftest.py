import math

import numpy as np
import pytest
from hypothesis import strategies as st

from qwrca import InitialTriple, make_qubit

SQ2 = math.sqrt(2.0)

# angles kept a little away from the endpoints where cos θ or sin θ vanish
thetas_open = st.floats(0.05, math.pi / 2 - 0.05)
unit_floats = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def complexes(draw, radius=1.0):
    r = draw(st.floats(0.0, radius))
    ph = draw(st.floats(0.0, 2 * math.pi))
    return complex(r * math.cos(ph), r * math.sin(ph))


@st.composite
def triples(draw):
    return InitialTriple(draw(complexes()), draw(complexes()), draw(complexes()))


@st.composite
def qubits(draw):
    split = draw(st.floats(0.0, math.pi / 2))
    pl, pr = draw(st.floats(0.0, 2 * math.pi)), draw(st.floats(0.0, 2 * math.pi))
    return make_qubit(
        complex(math.cos(split) * math.cos(pl), math.cos(split) * math.sin(pl)),
        complex(math.sin(split) * math.cos(pr), math.sin(split) * math.sin(pr)),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

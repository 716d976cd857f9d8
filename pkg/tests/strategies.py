"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from lcreduce.labelcover import LabelCoverInstance, Projection, random_instance, tiny_instance_params


@st.composite
def bipartite_instances(draw, max_side=4, max_alphabet=3):
    """Arbitrary projection instances (any edge set, any maps)."""
    n_left = draw(st.integers(1, max_side))
    n_right = draw(st.integers(1, max_side))
    g = draw(st.integers(1, max_alphabet))
    pairs = [(i, j) for i in range(1, n_left + 1) for j in range(1, n_right + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    constraints = {
        e: Projection(tuple(draw(st.lists(st.integers(1, g), min_size=g, max_size=g)))) for e in edges
    }
    return LabelCoverInstance(tuple(range(1, n_left + 1)), tuple(range(1, n_right + 1)), g, constraints)


@st.composite
def tiny_planted(draw):
    """Seeded desk-scale planted instances, as used by the sweeps."""
    seed = draw(st.integers(0, 10_000))
    return random_instance(seed, *tiny_instance_params(seed))

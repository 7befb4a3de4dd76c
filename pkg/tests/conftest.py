from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from blockforge.fusion import inertial_indices, make_block
from blockforge.group_core import make_params, valid_group_params

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL_GROUPS = [G.as_tuple() for G in valid_group_params((3, 5, 7), 3**6)]
SMALL_BLOCKS = [(*G, e) for G in SMALL_GROUPS for e in inertial_indices(G[0])]


def group_params():
    return st.sampled_from(SMALL_GROUPS).map(lambda t: make_params(*t))


def blocks():
    return st.sampled_from(SMALL_BLOCKS).map(lambda t: make_block(*t))

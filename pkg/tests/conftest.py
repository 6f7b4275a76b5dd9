"""Shared helpers: seeded random instances and profiles for property tests."""

import random
import string

from bakermill import Instance, StrategyProfile

# One seed per concern so reordering tests never shifts another file's draws.
MODEL_SEED = 11
FLOW_SEED = 23
SOLVER_SEED = 37
ORACLE_SEED = 53
DYNAMICS_SEED = 71
REDUCTIONS_SEED = 89
IO_SEED = 97


def random_instance(rng, max_bakers=6, max_locations=4, max_millers=3):
    """Uniform small instance; each range is a uniform nonempty subset."""
    num_locations = rng.randint(1, max_locations)
    num_bakers = rng.randint(1, max_bakers)
    num_millers = rng.randint(1, max_millers)
    names = tuple(string.ascii_lowercase[:num_locations])
    ranges = []
    for _ in range(num_bakers):
        mask = rng.randrange(1, 2 ** num_locations)
        ranges.append(tuple(i for i in range(num_locations) if mask >> i & 1))
    return Instance(names, num_millers, tuple(ranges))


def random_profile(rng, instance):
    bakers = tuple(rng.choice(r) for r in instance.bakers)
    millers = tuple(
        rng.randrange(instance.num_locations) for _ in range(instance.num_millers)
    )
    return StrategyProfile(bakers, millers)


def fresh_rng(seed):
    return random.Random(seed)

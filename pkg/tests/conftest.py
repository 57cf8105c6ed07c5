import itertools

import pytest

from denserank.generate import GenerationMode, GeneratorSpec, generate
from denserank.model import (
    Constraint,
    Family,
    Instance,
    ProblemKind,
    Ranking,
    all_selected_values,
    edit_wrt,
)


def make_kind(family, r):
    return ProblemKind(family, r)


def consistent_instance(kind, n, sigma=None):
    """Instance whose every constraint is edited to agree with sigma."""
    if sigma is None:
        sigma = Ranking.identity(n)
    seeds = (
        Constraint(m, all_selected_values(kind, m)[0])
        for m in itertools.combinations(range(n), kind.r)
    )
    return Instance(n, kind, [edit_wrt(kind, c, sigma) for c in seeds])


@pytest.fixture
def planted():
    """Factory for seeded planted instances."""

    def build(family, r, n, seed, edits):
        spec = GeneratorSpec(ProblemKind(family, r), n, GenerationMode.PLANTED, seed, edits=edits)
        return generate(spec)

    return build


@pytest.fixture
def uniform():
    """Factory for seeded uniform instances."""

    def build(family, r, n, seed):
        return generate(GeneratorSpec(ProblemKind(family, r), n, GenerationMode.UNIFORM, seed))

    return build


@pytest.fixture(params=[Family.BETWEENNESS, Family.FAST, Family.TRANSITIVE_FAST])
def any_family(request):
    return request.param

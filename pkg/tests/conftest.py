import itertools

from invcalc.groupspec import enumerate_subgroups, spec_for_subgroup
from invcalc.rootdata import SimpleFactor

# exhaustive verification corpora: (type, max factors, rank choices)
CORPUS_SHAPES = (
    ("B", 3, (1, 2, 3)),
    ("C", 3, (1, 2, 3, 4)),
    ("D", 2, (3, 4, 5, 6)),
)

_CACHE = {}


def factor_lists(ftype, max_m, rank_choices):
    for m in range(1, max_m + 1):
        for ranks in itertools.product(rank_choices, repeat=m):
            yield [SimpleFactor(ftype, n) for n in ranks]


def corpus_specs(ftype, max_m, rank_choices):
    key = (ftype, max_m, rank_choices)
    if key not in _CACHE:
        specs = []
        for factors in factor_lists(ftype, max_m, rank_choices):
            for sub in enumerate_subgroups(factors):
                specs.append(spec_for_subgroup(factors, sub))
        _CACHE[key] = specs
    return _CACHE[key]


def all_corpus_specs():
    for shape in CORPUS_SHAPES:
        yield from corpus_specs(*shape)

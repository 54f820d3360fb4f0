import json

from ._hiermodel import (
    HiermodelError,
    annulus_distance,
    boundary_from_tube,
    d_el_estimate,
    farey_distance,
    farey_geodesics,
    hyperbolic_distance,
    tube_from_boundary,
    twist_number,
)
from . import _hiermodel


def generate_corpus(surface, count, walk, seed=1):
    return json.loads(_hiermodel.generate_corpus(surface, count, walk, seed))


def run_pipeline(corpus, max_main=-1, threads=0):
    if not isinstance(corpus, str):
        corpus = json.dumps(corpus)
    return json.loads(_hiermodel.run_pipeline(corpus, max_main, threads))

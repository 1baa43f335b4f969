from fractions import Fraction
from functools import lru_cache

import xmodlie
from hypothesis import settings
from hypothesis.strategies import composite, integers, lists, sampled_from

settings.register_profile("ci", deadline=None, max_examples=40)
settings.load_profile("ci")


small_ints = integers(min_value=1, max_value=4)
dims = integers(min_value=0, max_value=4)


@lru_cache(maxsize=None)
def corpus():
    "The shipped corpus, loaded once per session."
    return xmodlie.load_corpus("abelian", "sl2", "h3", "k2k3")


CORPUS_ALGEBRAS = ["K1", "K2", "K3", "K4", "sl2", "h3"]
CORPUS_BRAIDINGS = ["K1_id", "K2_id", "K3_id", "K4_id", "sl2_id", "h3_id", "sl2_sq", "T2", "T3", "T2_neg"]


@composite
def rationals(draw, max_num=6, max_den=4):
    num = draw(integers(min_value=-max_num, max_value=max_num))
    den = draw(integers(min_value=1, max_value=max_den))
    return Fraction(num, den)


@composite
def vectors(draw, n):
    return xmodlie.vector(draw(lists(rationals(), min_size=n, max_size=n)))


@composite
def matrices(draw, rows=None, cols=None):
    if rows is None:
        rows = draw(small_ints)
    if cols is None:
        cols = draw(small_ints)
    data = [draw(lists(rationals(), min_size=cols, max_size=cols)) for _ in range(rows)]
    return xmodlie.to_matrix(data, shape=(rows, cols))


@composite
def subspaces(draw, n=None):
    if n is None:
        n = draw(small_ints)
    k = draw(integers(min_value=0, max_value=n + 1))
    vecs = [draw(vectors(n)) for _ in range(k)]
    return xmodlie.Subspace(n, vecs)


@composite
def algebras(draw):
    return corpus().get("algebras", draw(sampled_from(CORPUS_ALGEBRAS)))


@composite
def elements(draw, L):
    return draw(vectors(L.dim))


def assert_vec_equal(a, b):
    assert xmodlie.mat_equal(a, b), f"{list(a)} != {list(b)}"

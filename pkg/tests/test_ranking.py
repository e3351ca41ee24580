"""Cosine scoring and deterministic top-k ranking."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emojirec.ranking import NoCandidatesError, cosine, rank
from emojirec.vectorize import EmojiVectorSet, QueryVector


def vector_set(vectors, empty=()):
    dim = len(next(iter(vectors.values())))
    vs = EmojiVectorSet(strategy="senses", dimension=dim)
    for cp, vec in vectors.items():
        vs.vectors[cp] = np.asarray(vec, dtype=np.float64)
        vs.empty_flags[cp] = cp in empty
    return vs


class TestCosine:
    def test_orthogonal(self):
        assert cosine([1, 0], [0, 1]) == pytest.approx(0.0, abs=1e-9)

    def test_collinear(self):
        assert cosine([1, 2], [2, 4]) == pytest.approx(1.0, abs=1e-9)

    def test_analytic_inv_sqrt2(self):
        assert cosine([1, 0], [1, 1]) == pytest.approx(1 / math.sqrt(2), abs=1e-9)

    def test_zero_norm_returns_none(self):
        assert cosine([0, 0], [1, 1]) is None
        assert cosine([1, 1], [0, 0]) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cosine([1, 0], [1, 0, 0])

    def test_opposite(self):
        assert cosine([1, 0], [-1, 0]) == pytest.approx(-1.0, abs=1e-9)

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=8),
        st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=8),
    )
    def test_bounded_and_symmetric(self, a, b):
        if len(a) != len(b):
            return
        ab = cosine(a, b)
        ba = cosine(b, a)
        if ab is None:
            assert ba is None
            return
        assert -1.0 - 1e-9 <= ab <= 1.0 + 1e-9
        assert ab == pytest.approx(ba, abs=1e-12)


class TestRank:
    def test_scores_sorted_k2(self):
        # cos(query, A)=high, C=mid, B=low; query [1, 0]
        vs = vector_set({"A": [0.9, 0.1], "B": [0.1, 0.9], "C": [0.5, 0.5]})
        ranking = rank(np.array([1.0, 0.0]), vs, 2)
        assert ranking.codepoints() == ["A", "C"]

    def test_k_larger_than_candidates(self):
        vs = vector_set({"A": [1, 0], "B": [0, 1]})
        ranking = rank(np.array([1.0, 0.0]), vs, 10)
        assert len(ranking) == 2

    def test_identical_vectors_tie_break_by_codepoint(self):
        vs = vector_set({"U+0042": [1, 1], "U+0041": [1, 1]})
        ranking = rank(np.array([1.0, 0.0]), vs, 2)
        assert ranking.codepoints() == ["U+0041", "U+0042"]

    def test_empty_flagged_excluded(self):
        vs = vector_set({"A": [1, 0], "B": [0, 0]}, empty={"B"})
        ranking = rank(np.array([1.0, 0.0]), vs, 5)
        assert ranking.codepoints() == ["A"]

    def test_restriction_filters(self):
        vs = vector_set({"A": [1, 0], "B": [0.9, 0.1], "C": [0, 1]})
        ranking = rank(np.array([1.0, 0.0]), vs, 5, restriction={"B", "C"})
        assert ranking.codepoints() == ["B", "C"]

    def test_restriction_to_nothing(self):
        vs = vector_set({"A": [1, 0]})
        with pytest.raises(NoCandidatesError):
            rank(np.array([1.0, 0.0]), vs, 1, restriction={"Z"})

    def test_all_flagged_empty(self):
        vs = vector_set({"A": [0, 0]}, empty={"A"})
        with pytest.raises(NoCandidatesError):
            rank(np.array([1.0, 0.0]), vs, 1)

    def test_k_must_be_positive(self):
        vs = vector_set({"A": [1, 0]})
        with pytest.raises(ValueError):
            rank(np.array([1.0, 0.0]), vs, 0)

    def test_accepts_query_vector(self):
        vs = vector_set({"A": [1, 0]})
        q = QueryVector(np.array([1.0, 0.0]), mode="V", image_coverage=1.0)
        assert rank(q, vs, 1).codepoints() == ["A"]

    def test_zero_norm_candidate_ranks_last(self):
        # not flagged empty, but a zero vector: undefined score sorts last
        vs = vector_set({"A": [0, 0], "B": [1, 0]})
        ranking = rank(np.array([1.0, 0.0]), vs, 2)
        assert ranking.codepoints() == ["B", "A"]
        assert math.isnan(ranking.entries[1][1])

    def test_scores_non_increasing(self):
        vs = vector_set({"A": [1, 0], "B": [0.5, 0.5], "C": [0, 1], "D": [0.9, 0.2]})
        ranking = rank(np.array([1.0, 0.0]), vs, 4)
        scores = [s for _, s in ranking]
        assert all(x >= y for x, y in zip(scores, scores[1:]))


# ---- randomized exhaustive oracle ------------------------------------------


def brute_force_rank(query, vectors, k, restriction=None):
    """Exhaustive score-and-sort, written independently of rank()."""
    rows = []
    q = np.asarray(query, dtype=np.float64)
    qn = math.sqrt(float(np.dot(q, q)))
    for cp, vec in vectors.items():
        if restriction is not None and cp not in restriction:
            continue
        v = np.asarray(vec, dtype=np.float64)
        vn = math.sqrt(float(np.dot(v, v)))
        if qn == 0.0 or vn == 0.0:
            rows.append((cp, None))
        else:
            rows.append((cp, float(np.dot(q, v)) / (qn * vn)))
    defined = sorted(
        [(cp, s) for cp, s in rows if s is not None],
        key=lambda item: (-item[1], item[0]),
    )
    undefined = sorted([cp for cp, s in rows if s is None])
    ordered = [cp for cp, _ in defined] + undefined
    return ordered[:k]


@st.composite
def ranking_instance(draw):
    dim = draw(st.integers(min_value=1, max_value=6))
    n = draw(st.integers(min_value=1, max_value=100))
    # duplicated vectors are likely thanks to the coarse component grid
    component = st.sampled_from([-1.0, -0.5, 0.0, 0.5, 1.0, 2.0])
    vectors = {
        f"U+{i:04X}": draw(st.lists(component, min_size=dim, max_size=dim))
        for i in range(n)
    }
    query = draw(
        st.lists(
            st.floats(-3, 3, allow_nan=False).filter(lambda x: abs(x) > 1e-6),
            min_size=dim,
            max_size=dim,
        )
    )
    k = draw(st.integers(min_value=1, max_value=n + 3))
    return vectors, query, k


@settings(max_examples=100, deadline=None)
@given(ranking_instance())
def test_rank_matches_exhaustive_oracle(instance):
    vectors, query, k = instance
    vs = vector_set(vectors)
    result = rank(np.asarray(query), vs, k)
    assert result.codepoints() == brute_force_rank(query, vectors, k)


@settings(max_examples=50, deadline=None)
@given(ranking_instance(), st.sampled_from([0.001, 1.0, 1000.0]))
def test_rank_scale_invariance(instance, alpha):
    vectors, query, k = instance
    vs = vector_set(vectors)
    base = rank(np.asarray(query), vs, k)
    scaled = rank(np.asarray(query) * alpha, vs, k)
    assert scaled.codepoints() == base.codepoints()
    for (_, s1), (_, s2) in zip(base, scaled):
        if math.isnan(s1):
            assert math.isnan(s2)
        else:
            assert s2 == pytest.approx(s1, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(ranking_instance())
def test_restriction_equals_filtered_full_ranking(instance):
    vectors, query, k = instance
    if len(vectors) < 2:
        return
    vs = vector_set(vectors)
    members = sorted(vectors)[:: 2]  # every other codepoint
    restricted = rank(np.asarray(query), vs, len(vectors), set(members))
    full = rank(np.asarray(query), vs, len(vectors))
    filtered = [cp for cp in full.codepoints() if cp in set(members)]
    assert restricted.codepoints() == filtered


@settings(max_examples=50, deadline=None)
@given(ranking_instance())
def test_topk_prefix_of_topk_plus_one(instance):
    vectors, query, k = instance
    vs = vector_set(vectors)
    top_k = rank(np.asarray(query), vs, k)
    top_k1 = rank(np.asarray(query), vs, k + 1)
    assert top_k1.codepoints()[: len(top_k)] == top_k.codepoints()

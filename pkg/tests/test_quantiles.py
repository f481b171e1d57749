"""Five-number quantile models: summaries and inverse-CDF sampling."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tandemgrip.errors import ParseError
from tandemgrip.quantiles import QuantileModel, summarize, summarize_csv_text


class TestSummarize:
    def test_five_point_exact(self):
        q = summarize([7, 11, 15, 28, 38])
        assert q.as_tuple() == (7.0, 11.0, 15.0, 28.0, 38.0)

    def test_single_value(self):
        q = summarize([4.2])
        assert q.as_tuple() == (4.2, 4.2, 4.2, 4.2, 4.2)

    def test_order_insensitive(self):
        assert summarize([38, 7, 15, 11, 28]) == summarize([7, 11, 15, 28, 38])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize([])


class TestSampling:
    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_sample_within_bounds(self, u):
        q = QuantileModel(1, 5, 10, 16, 30)
        v = float(q.sample(u))
        assert 1.0 <= v <= 30.0

    def test_quantile_anchors(self):
        q = QuantileModel(7, 11, 15, 28, 38)
        assert [float(q.sample(p)) for p in (0, 0.25, 0.5, 0.75, 1)] == [7, 11, 15, 28, 38]

    def test_round_trip_large_sample(self):
        q = QuantileModel(7, 11, 15, 28, 38)
        rng = np.random.default_rng(123)
        vals = q.sample(rng.random(100_000))
        back = summarize(vals)
        for a, b in zip(back.as_tuple(), q.as_tuple()):
            assert a == pytest.approx(b, rel=0.02)

    def test_nondecreasing_enforced(self):
        with pytest.raises(ValueError):
            QuantileModel(5, 4, 10, 16, 30)


class TestCsvSummary:
    def test_columns(self):
        text = "a,b\n1,10\n2,20\n3,30\n"
        out = summarize_csv_text(text)
        assert out["a"].median == 2.0
        assert out["b"].q_max == 30.0

    def test_parse_error_location(self):
        with pytest.raises(ParseError) as err:
            summarize_csv_text("a\n1\nbogus\n")
        assert "row 3" in str(err.value)

    def test_no_numeric_columns(self):
        with pytest.raises(ParseError):
            summarize_csv_text("a\nfoo\nbar\n")

import io
import json

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from revsum.corpus import (
    SplitSpec,
    corpus_stats,
    dedup,
    read_jsonl,
    shard_of,
    split_corpus,
    write_jsonl,
    write_sharded,
)
from revsum.mining import CorpusExample

from conftest import DATA_DIR


def make_example(i=0, passage="a granite wall", summary="granite wall", score=0.8,
                 timestamp="2020-01-02T00:00:00Z", new_rev_id=2):
    return CorpusExample(
        id=f"ex{i:04d}",
        page_id=i,
        page_title=f"Page {i}",
        old_rev_id=new_rev_id - 1,
        new_rev_id=new_rev_id,
        timestamp=timestamp,
        passage=passage,
        summary=summary,
        score=score,
    )


example_st = st.builds(
    make_example,
    i=st.integers(0, 9999),
    passage=st.text(min_size=1, max_size=60),
    summary=st.text(min_size=1, max_size=30),
    score=st.floats(0, 1, allow_nan=False),
    timestamp=st.sampled_from(
        ["2019-06-01T00:00:00Z", "2020-01-02T00:00:00Z", "2021-12-31T23:59:59Z"]
    ),
    new_rev_id=st.integers(1, 10_000),
)


class TestDedup:
    def test_no_duplicates_unchanged(self):
        examples = [make_example(i, passage=f"p{i} text", summary=f"s{i}") for i in range(5)]
        assert dedup(examples) == examples

    def test_earliest_survives(self):
        early = make_example(1, timestamp="2020-01-02T00:00:00Z", new_rev_id=2)
        late = make_example(2, timestamp="2020-01-04T00:00:00Z", new_rev_id=4)
        assert dedup([late, early]) == [early]
        assert dedup([early, late]) == [early]

    def test_same_passage_different_summary_both_survive(self):
        a = make_example(1, summary="granite wall")
        b = make_example(2, summary="old granite wall")
        assert len(dedup([a, b])) == 2

    def test_whitespace_normalized_key(self):
        a = make_example(1, passage="a  granite   wall")
        b = make_example(2, passage="a granite wall", timestamp="2021-01-01T00:00:00Z")
        assert dedup([a, b]) == [a]

    @given(st.lists(example_st, max_size=30))
    def test_idempotent(self, examples):
        once = dedup(examples)
        assert dedup(once) == once


class TestJsonl:
    def test_empty_stream(self):
        sink = io.StringIO()
        assert write_jsonl(sink, []) == 0
        assert sink.getvalue() == ""

    def test_golden_three_line_file(self, tmp_path):
        examples = [
            make_example(1, passage="the harbor wall in Araklow", summary="harbor wall", score=0.75),
            make_example(2, passage='he said "stop"', summary="a quote", score=2 / 3),
            make_example(3, passage="café περίληψη 要約", summary="unicode résumé", score=1.0),
        ]
        out = tmp_path / "out.jsonl"
        assert write_jsonl(out, examples) == 3
        golden = (DATA_DIR / "corpus_golden.jsonl").read_bytes()
        assert out.read_bytes() == golden

    def test_embedded_newline_stays_one_record_per_line(self):
        sink = io.StringIO()
        write_jsonl(sink, [make_example(1, passage="line one\nline two")])
        raw = sink.getvalue()
        assert raw.count("\n") == 1
        assert json.loads(raw)["passage"] == "line one\nline two"

    def test_field_order_is_stable(self):
        sink = io.StringIO()
        write_jsonl(sink, [make_example(1)])
        record = json.loads(sink.getvalue())
        assert list(record) == [
            "id", "page_id", "page_title", "old_rev_id", "new_rev_id",
            "timestamp", "passage", "summary", "score",
        ]

    @given(st.lists(example_st, max_size=20))
    def test_round_trip(self, examples):
        sink = io.StringIO()
        write_jsonl(sink, examples)
        back = read_jsonl(io.StringIO(sink.getvalue()))
        assert back == examples

    def test_score_survives_bit_exact(self):
        scores = [1 / 3, 2 / 3, 0.6, 19 / 20, 1.0]
        examples = [make_example(i, score=s) for i, s in enumerate(scores)]
        sink = io.StringIO()
        write_jsonl(sink, examples)
        back = read_jsonl(io.StringIO(sink.getvalue()))
        assert [ex.score for ex in back] == scores


class TestSharding:
    def test_routing_is_stable_and_partitioned(self, tmp_path):
        examples = [make_example(i, passage=f"text {i} long enough", summary=f"s{i}") for i in range(40)]
        paths = write_sharded(tmp_path, examples, shards=4)
        assert [p.name for p in paths] == [f"part-{i:05d}.jsonl" for i in range(4)]
        merged = []
        for p in paths:
            for ex in read_jsonl(p):
                assert shard_of(ex.id, 4) == int(p.stem.split("-")[1])
                merged.append(ex)
        assert sorted(ex.id for ex in merged) == sorted(ex.id for ex in examples)


class TestSplitCorpus:
    def test_sizes_and_partition(self):
        examples = [make_example(i, summary=f"s{i}") for i in range(10)]
        train, valid, test = split_corpus(examples, SplitSpec(valid_size=2, test_size=2, seed=7))
        assert (len(train), len(valid), len(test)) == (6, 2, 2)
        ids = [ex.id for ex in train + valid + test]
        assert sorted(ids) == sorted(ex.id for ex in examples)
        assert len(set(ids)) == 10

    def test_deterministic_given_seed(self):
        examples = [make_example(i, summary=f"s{i}") for i in range(30)]
        spec = SplitSpec(valid_size=5, test_size=5, seed=42)
        assert split_corpus(examples, spec) == split_corpus(examples, spec)

    def test_different_seeds_differ(self):
        examples = [make_example(i, summary=f"s{i}") for i in range(1000)]
        a = split_corpus(examples, SplitSpec(valid_size=50, test_size=50, seed=1))
        b = split_corpus(examples, SplitSpec(valid_size=50, test_size=50, seed=2))
        assert {e.id for e in a[1]} != {e.id for e in b[1]}

    def test_too_small_names_required_minimum(self):
        examples = [make_example(i) for i in range(5)]
        with pytest.raises(ValueError, match="at least 9"):
            split_corpus(examples, SplitSpec(valid_size=4, test_size=4, seed=0))

    @given(st.integers(0, 2**63 - 1))
    @settings(max_examples=25)
    def test_partition_property(self, seed):
        examples = [make_example(i, summary=f"s{i}") for i in range(23)]
        train, valid, test = split_corpus(examples, SplitSpec(valid_size=4, test_size=6, seed=seed))
        assert (len(train), len(valid), len(test)) == (13, 4, 6)
        assert sorted(e.id for e in train + valid + test) == sorted(e.id for e in examples)


class TestCorpusStats:
    def test_empty_corpus_all_zeros(self):
        stats = corpus_stats([])
        assert stats.example_count == 0
        assert stats.avg_input_words == 0.0

    def test_sentence_averages(self):
        two = make_example(1, passage="One here. Two here.", summary="A summary here.")
        four = make_example(
            2, passage="One here. Two here. Three here. Four here.", summary="Another one."
        )
        stats = corpus_stats([two, four])
        assert stats.example_count == 2
        assert stats.avg_input_sentences == 3.0
        assert stats.avg_output_sentences == 1.0

    def test_word_averages_use_token_counts(self):
        ex = make_example(1, passage="a b c d", summary="x y")
        stats = corpus_stats([ex])
        assert stats.avg_input_words == 4.0
        assert stats.avg_output_words == 2.0

import json
import random

import pytest

from subwordseg.components import Box
from subwordseg.groundtruth import (
    LetterLabel,
    SchemaError,
    WordTruth,
    dataset_stats,
    parse_truth,
    write_truth,
)

SAMPLE = b"""
<word id="S0001">
  <subword idx="1"><a x="12" y="7"/><b x="58" y="40"/></subword>
  <subword idx="2"><a x="64" y="9"/><b x="101" y="44"/></subword>
  <letter name="Alif" shape="Isolated" code="0627"/>
</word>
"""


class TestParseXml:
    def test_sample_document(self):
        t = parse_truth(SAMPLE)
        assert t.id == "S0001"
        assert len(t.subwords) == 2
        assert t.subwords[0] == Box(12, 7, 58, 40)
        assert t.subwords[1] == Box(64, 9, 101, 44)
        assert t.letter_labels == (LetterLabel("Alif", "Isolated", "0627"),)

    def test_missing_coordinate_names_subword(self):
        doc = b'<word id="w"><subword><a x="1" y="2"/><b y="9"/></subword></word>'
        with pytest.raises(SchemaError, match="sub-word 1"):
            parse_truth(doc)

    def test_missing_corner_element(self):
        doc = b'<word id="w"><subword><a x="1" y="2"/></subword></word>'
        with pytest.raises(SchemaError, match="corner"):
            parse_truth(doc)

    def test_inverted_corners_rejected(self):
        doc = (
            b'<word id="w"><subword>'
            b'<a x="10" y="0"/><b x="5" y="9"/>'
            b"</subword></word>"
        )
        with pytest.raises(SchemaError, match="sub-word 1"):
            parse_truth(doc)

    def test_missing_id(self):
        doc = b'<word><subword><a x="1" y="2"/><b x="3" y="4"/></subword></word>'
        with pytest.raises(SchemaError, match="id"):
            parse_truth(doc)

    def test_no_subwords(self):
        with pytest.raises(SchemaError, match="no sub-words"):
            parse_truth(b'<word id="w"></word>')

    def test_unknown_elements_ignored(self):
        doc = (
            b'<word id="w"><baseline y="30"/>'
            b'<subword><a x="1" y="2"/><b x="3" y="4"/></subword>'
            b'<writer age="41" gender="f"/></word>'
        )
        t = parse_truth(doc)
        assert len(t.subwords) == 1

    def test_not_xml_at_all(self):
        with pytest.raises(SchemaError):
            parse_truth(b"<<<garbage")

    def test_non_integer_coordinate(self):
        doc = b'<word id="w"><subword><a x="u" y="2"/><b x="3" y="4"/></subword></word>'
        with pytest.raises(SchemaError, match="integer"):
            parse_truth(doc)


class TestParseJsonMirror:
    def test_json_document(self):
        doc = json.dumps({
            "id": "S0002",
            "subwords": [
                {"idx": 1, "a": {"x": 1, "y": 2}, "b": {"x": 8, "y": 9}},
            ],
            "letters": [{"name": "Ba", "shape": "Initial", "code": "0628"}],
        }).encode()
        t = parse_truth(doc)
        assert t.id == "S0002"
        assert t.subwords == (Box(1, 2, 8, 9),)
        assert t.letter_labels[0].code == "0628"

    def test_json_missing_corner(self):
        doc = json.dumps({"id": "x", "subwords": [{"a": {"x": 1, "y": 2}}]})
        with pytest.raises(SchemaError, match="sub-word 1"):
            parse_truth(doc.encode())

    def test_json_empty_subwords(self):
        with pytest.raises(SchemaError, match="no sub-words"):
            parse_truth(b'{"id": "x", "subwords": []}')


def random_truth(rng, word_id):
    boxes = []
    for _ in range(rng.randint(1, 6)):
        ax, ay = rng.randint(0, 90), rng.randint(0, 50)
        boxes.append(Box(ax, ay, ax + rng.randint(0, 40), ay + rng.randint(0, 30)))
    letters = tuple(
        LetterLabel(f"L{i}", "Medial", f"{0x600 + i:04X}")
        for i in range(rng.randint(0, 3))
    )
    return WordTruth(word_id, tuple(boxes), letters)


class TestWriteTruth:
    def test_round_trip_sample(self):
        t = parse_truth(SAMPLE)
        assert parse_truth(write_truth(t)) == t

    def test_round_trip_random_records(self):
        rng = random.Random(5)
        for i in range(40):
            t = random_truth(rng, f"Q{i:02d}-{rng.randint(0, 999):03d}")
            assert parse_truth(write_truth(t)) == t

    def test_single_subword_document_shape(self):
        t = WordTruth("w", (Box(0, 0, 5, 5),))
        out = write_truth(t)
        assert out.count(b"<subword") == 1

    def test_attribute_escaping(self):
        t = WordTruth('a"b<c>&d', (Box(0, 0, 1, 1),))
        assert parse_truth(write_truth(t)).id == 'a"b<c>&d'

    def test_empty_subwords_cannot_exist(self):
        with pytest.raises(ValueError):
            WordTruth("w", ())


class TestDatasetStats:
    def test_histogram_and_totals(self):
        rng = random.Random(0)
        truths = []
        for i, n in enumerate([1, 2, 2, 4]):
            boxes = tuple(Box(10 * j, 0, 10 * j + 5, 5) for j in range(n))
            truths.append(WordTruth(f"w{i}", boxes))
        stats = dataset_stats(truths)
        assert stats.histogram == {1: 1, 2: 2, 4: 1}
        assert stats.words == 4
        assert stats.subwords == 9

    def test_empty_corpus(self):
        stats = dataset_stats([])
        assert stats.histogram == {}
        assert (stats.words, stats.subwords) == (0, 0)

    def test_totals_consistent_with_histogram(self):
        rng = random.Random(9)
        truths = [random_truth(rng, f"w{i}") for i in range(200)]
        stats = dataset_stats(truths)
        assert stats.words == sum(stats.histogram.values())
        assert stats.subwords == sum(k * v for k, v in stats.histogram.items())

    def test_paper_scale_corpus_shape(self):
        # 1,131 words arranged to total 2,652 sub-words
        counts = [2] * 741 + [3] * 390
        assert len(counts) == 1131 and sum(counts) == 2652
        truths = [
            WordTruth(
                f"w{i}",
                tuple(Box(12 * j, 0, 12 * j + 8, 8) for j in range(n)),
            )
            for i, n in enumerate(counts)
        ]
        stats = dataset_stats(truths)
        assert stats.words == 1131
        assert stats.subwords == 2652
        assert stats.record()["histogram"] == {"2": 741, "3": 390}

"""Corpus and table file formats: round trips and validation errors."""

import json

import numpy as np
import pytest

from pmisum.dataio import (
    CorpusFormatError,
    CorpusRecord,
    TableFormatError,
    load_corpus,
    load_table,
    save_corpus,
    save_table,
    table_from_dict,
    table_path_for,
    table_to_dict,
)
from pmisum.synthetic import make_random_table, make_toy_corpus


class TestCorpusRecord:
    def test_requires_exactly_one_content_field(self):
        with pytest.raises(ValueError):
            CorpusRecord(doc_id="d")
        with pytest.raises(ValueError):
            CorpusRecord(doc_id="d", text="a", sentences=("a",))

    def test_requires_doc_id(self):
        with pytest.raises(ValueError):
            CorpusRecord(doc_id="", text="a")

    def test_to_document_with_sentences(self):
        record = CorpusRecord(doc_id="d", sentences=("First.", "Second."))
        doc = record.to_document()
        assert doc.id == "d"
        assert [s.text for s in doc.sentences] == ["First.", "Second."]

    def test_to_document_splits_text(self):
        record = CorpusRecord(doc_id="d", text="First point. Second point.")
        doc = record.to_document()
        assert [s.text for s in doc.sentences] == ["First point.", "Second point."]

    def test_to_document_custom_splitter(self):
        record = CorpusRecord(doc_id="d", text="a|b|c")
        doc = record.to_document(splitter=lambda t: t.split("|"))
        assert doc.n == 3


class TestCorpusFiles:
    def test_round_trip_preserves_fields(self, tmp_path):
        records = [
            CorpusRecord(doc_id="d1", text="Raw text. More text.", reference="A summary."),
            CorpusRecord(
                doc_id="d2",
                sentences=("Pre-split one.", "Pre-split two."),
                extras={"source": "unit", "fold": 3},
            ),
        ]
        path = tmp_path / "corpus.jsonl"
        save_corpus(records, path)
        loaded = load_corpus(path)
        assert loaded == records
        assert loaded[1].extras == {"source": "unit", "fold": 3}

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text(
            '{"id": "a", "text": "x."}\n\n   \n{"id": "b", "text": "y."}\n',
            encoding="utf-8",
        )
        assert [r.doc_id for r in load_corpus(path)] == ["a", "b"]

    def test_duplicate_id_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text(
            '{"id": "a", "text": "x."}\n{"id": "a", "text": "y."}\n', encoding="utf-8"
        )
        with pytest.raises(CorpusFormatError, match="line 2"):
            load_corpus(path)

    def test_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "text": "x."}\nnot json{\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="line 2"):
            load_corpus(path)

    def test_both_content_fields_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text(
            '{"id": "a", "text": "x.", "sentences": ["x."]}\n', encoding="utf-8"
        )
        with pytest.raises(CorpusFormatError, match="line 1"):
            load_corpus(path)

    def test_missing_content_fields_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a"}\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="exactly one"):
            load_corpus(path)

    def test_missing_id_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"text": "x."}\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="'id'"):
            load_corpus(path)

    def test_non_string_sentence_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "sentences": ["x.", 5]}\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="sentences"):
            load_corpus(path)

    def test_empty_sentences_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "sentences": []}\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="non-empty"):
            load_corpus(path)

    def test_non_object_record_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('[1, 2]\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="object"):
            load_corpus(path)


class TestTableFiles:
    def test_round_trip_is_bitwise(self, tmp_path):
        rng = np.random.default_rng(137)
        for i in range(20):
            table = make_random_table(int(rng.integers(1, 9)), rng)
            path = tmp_path / f"t{i}.table.json"
            save_table(table, path)
            loaded = load_table(path)
            assert np.array_equal(loaded.log_p, table.log_p)
            assert np.array_equal(loaded.log_p_cond, table.log_p_cond)

    def test_metadata_survives(self, tmp_path):
        _, table, _ = make_toy_corpus()
        path = tmp_path / "toy.table.json"
        save_table(table, path)
        assert load_table(path).metadata == {"source": "synthetic-toy"}

    def test_second_save_identical_bytes(self, tmp_path):
        _, table, _ = make_toy_corpus()
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        save_table(table, first)
        save_table(load_table(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_version_mismatch(self):
        payload = table_to_dict(make_toy_corpus()[1])
        payload["version"] = 2
        with pytest.raises(TableFormatError, match="version"):
            table_from_dict(payload)

    def test_n_must_be_positive_integer(self):
        payload = table_to_dict(make_toy_corpus()[1])
        for bad in (0, -1, 2.5, "6", True, None):
            broken = dict(payload, n=bad)
            with pytest.raises(TableFormatError, match="'n'"):
                table_from_dict(broken)

    def test_length_mismatch_names_field(self):
        payload = table_to_dict(make_toy_corpus()[1])
        broken = dict(payload, log_p=payload["log_p"][:-1])
        with pytest.raises(TableFormatError, match="log_p"):
            table_from_dict(broken)

    def test_row_length_mismatch_names_row(self):
        payload = table_to_dict(make_toy_corpus()[1])
        rows = [list(row) for row in payload["log_p_cond"]]
        rows[2] = rows[2][:-1]
        with pytest.raises(TableFormatError, match=r"log_p_cond\[2\]"):
            table_from_dict(dict(payload, log_p_cond=rows))

    def test_nan_rejected_with_location(self):
        payload = table_to_dict(make_toy_corpus()[1])
        rows = [list(row) for row in payload["log_p_cond"]]
        rows[1][4] = float("nan")
        with pytest.raises(TableFormatError, match=r"log_p_cond\[1\]\[4\]"):
            table_from_dict(dict(payload, log_p_cond=rows))

    def test_infinity_rejected(self):
        payload = table_to_dict(make_toy_corpus()[1])
        log_p = list(payload["log_p"])
        log_p[0] = float("-inf")
        with pytest.raises(TableFormatError, match=r"log_p\[0\]"):
            table_from_dict(dict(payload, log_p=log_p))

    def test_boolean_entry_rejected(self):
        payload = table_to_dict(make_toy_corpus()[1])
        log_p = list(payload["log_p"])
        log_p[3] = True
        with pytest.raises(TableFormatError, match=r"log_p\[3\]"):
            table_from_dict(dict(payload, log_p=log_p))

    def test_non_numeric_entry_rejected(self):
        payload = table_to_dict(make_toy_corpus()[1])
        log_p = list(payload["log_p"])
        log_p[2] = "-9.1"
        with pytest.raises(TableFormatError, match=r"log_p\[2\]"):
            table_from_dict(dict(payload, log_p=log_p))

    def test_non_object_payload_rejected(self):
        with pytest.raises(TableFormatError):
            table_from_dict([1, 2, 3])

    def test_non_object_metadata_rejected(self):
        payload = table_to_dict(make_toy_corpus()[1])
        with pytest.raises(TableFormatError, match="metadata"):
            table_from_dict(dict(payload, metadata="notes"))

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{broken", encoding="utf-8")
        with pytest.raises(TableFormatError, match="invalid JSON"):
            load_table(path)

    def test_nan_cannot_be_saved(self, tmp_path):
        # the in-memory constructor already rejects non-finite entries
        from pmisum.core import LogProbTable

        with pytest.raises(ValueError):
            LogProbTable(
                log_p=np.array([np.nan]), log_p_cond=np.array([[0.0]])
            )

    def test_table_path_convention(self, tmp_path):
        path = table_path_for(tmp_path, "doc-7")
        assert path.endswith("doc-7.table.json")
        assert str(tmp_path) in path


class TestJsonFloatStability:
    def test_repr_round_trip_is_exact(self):
        rng = np.random.default_rng(139)
        values = rng.uniform(-20, 5, 200)
        for value in values:
            assert float(json.loads(json.dumps(float(value)))) == float(value)

"""Manifest IO, chunking, stratified splits, synthetic corpora."""

import random
from collections import Counter

import pytest

from readlab.corpus import (
    MANIFEST_HEADER,
    LabeledCorpus,
    chunk_corpus,
    chunk_document,
    generate_synthetic,
    load_document,
    load_manifest,
    save_corpus,
    stratified_kfold,
    stratified_split,
)
from readlab.errors import (
    BadRow,
    ClassSmallerThanK,
    EmptyClass,
    EmptyCorpus,
    EmptyDocument,
    MissingFile,
    NonContiguousClasses,
)
from readlab.formulas import asl
from readlab.textseg import Document, profile

from conftest import write_manifest


class TestLoadDocument:
    def test_id_is_stem(self, tmp_path):
        path = tmp_path / "story.txt"
        path.write_text("One sentence.", encoding="utf-8")
        doc = load_document(path)
        assert doc.id == "story"
        assert doc.raw_text == "One sentence."
        assert doc.source == str(path)

    def test_missing(self, tmp_path):
        with pytest.raises(MissingFile):
            load_document(tmp_path / "gone.txt")


class TestLoadManifest:
    def test_round_trip(self, tiny_manifest):
        corpus = load_manifest(tiny_manifest)
        assert len(corpus) == 3
        assert corpus.class_names == ("easy", "hard")
        assert corpus.labels == (0, 0, 1)
        assert [d.id for d in corpus.documents] == ["a", "b", "c"]

    def test_comments_and_blanks_skipped(self, tmp_path):
        (tmp_path / "d.txt").write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(
            f"# generated by a test\n\n{MANIFEST_HEADER}\n# another comment\nd.txt\tonly\t0\n",
            encoding="utf-8",
        )
        corpus = load_manifest(manifest)
        assert len(corpus) == 1

    def test_missing_header_rejected(self, tmp_path):
        (tmp_path / "d.txt").write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text("d.txt\tonly\t0\n", encoding="utf-8")
        with pytest.raises(BadRow) as err:
            load_manifest(manifest)
        assert "header" in str(err.value)

    @pytest.mark.parametrize(
        "row,fragment",
        [
            ("d.txt\tonly", "3 tab-separated"),
            ("d.txt\tonly\t0\textra", "3 tab-separated"),
            ("\tonly\t0", "empty"),
            ("d.txt\t\t0", "empty"),
            ("d.txt\tonly\tzero", "not an integer"),
            ("d.txt\tonly\t-1", ">= 0"),
        ],
    )
    def test_bad_rows_carry_line_numbers(self, tmp_path, row, fragment):
        (tmp_path / "d.txt").write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(f"{MANIFEST_HEADER}\n{row}\n", encoding="utf-8")
        with pytest.raises(BadRow) as err:
            load_manifest(manifest)
        assert "line 2" in str(err.value)
        assert fragment in str(err.value)

    def test_inconsistent_class_naming_rejected(self, tmp_path):
        for name in ("a.txt", "b.txt"):
            (tmp_path / name).write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(
            f"{MANIFEST_HEADER}\na.txt\teasy\t0\nb.txt\thard\t0\n", encoding="utf-8"
        )
        with pytest.raises(BadRow):
            load_manifest(manifest)

    def test_reused_class_name_rejected(self, tmp_path):
        for name in ("a.txt", "b.txt"):
            (tmp_path / name).write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(
            f"{MANIFEST_HEADER}\na.txt\teasy\t0\nb.txt\teasy\t1\n", encoding="utf-8"
        )
        with pytest.raises(BadRow):
            load_manifest(manifest)

    def test_duplicate_doc_id_rejected(self, tmp_path):
        sub = tmp_path / "sub"
        sub.mkdir()
        (tmp_path / "d.txt").write_text("Text.", encoding="utf-8")
        (sub / "d.txt").write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(
            f"{MANIFEST_HEADER}\nd.txt\tonly\t0\nsub/d.txt\tonly\t0\n", encoding="utf-8"
        )
        with pytest.raises(BadRow):
            load_manifest(manifest)

    def test_missing_document_file(self, tmp_path):
        manifest = tmp_path / "m.tsv"
        manifest.write_text(f"{MANIFEST_HEADER}\nabsent.txt\tonly\t0\n", encoding="utf-8")
        with pytest.raises(MissingFile):
            load_manifest(manifest)

    def test_empty_manifest(self, tmp_path):
        manifest = tmp_path / "m.tsv"
        manifest.write_text(f"{MANIFEST_HEADER}\n", encoding="utf-8")
        with pytest.raises(EmptyCorpus):
            load_manifest(manifest)

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(MissingFile):
            load_manifest(tmp_path / "absent.tsv")

    def test_gapped_class_indexes_rejected(self, tmp_path):
        for name in ("a.txt", "b.txt"):
            (tmp_path / name).write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "m.tsv"
        manifest.write_text(
            f"{MANIFEST_HEADER}\na.txt\teasy\t0\nb.txt\thard\t2\n", encoding="utf-8"
        )
        with pytest.raises(NonContiguousClasses):
            load_manifest(manifest)

    def test_absolute_paths_work(self, tmp_path):
        doc = tmp_path / "abs.txt"
        doc.write_text("Text.", encoding="utf-8")
        manifest = tmp_path / "elsewhere" / "m.tsv"
        manifest.parent.mkdir()
        manifest.write_text(f"{MANIFEST_HEADER}\n{doc}\tonly\t0\n", encoding="utf-8")
        assert len(load_manifest(manifest)) == 1


class TestSaveCorpus:
    def test_round_trip(self, tmp_path):
        corpus = generate_synthetic(2, 3, seed=1)
        manifest = save_corpus(corpus, tmp_path / "out")
        reloaded = load_manifest(manifest)
        assert [d.id for d in reloaded.documents] == [d.id for d in corpus.documents]
        assert reloaded.labels == corpus.labels
        assert reloaded.class_names == corpus.class_names
        assert [d.raw_text for d in reloaded.documents] == [
            d.raw_text for d in corpus.documents
        ]

    def test_meta_line_written_as_comment(self, tmp_path):
        corpus = generate_synthetic(2, 1, seed=1)
        manifest = save_corpus(corpus, tmp_path / "out", meta_line="seed=1")
        first = manifest.read_text(encoding="utf-8").splitlines()[0]
        assert first == "# seed=1"
        assert len(load_manifest(manifest)) == 2


class TestChunking:
    def _doc(self, n_sentences):
        return Document("doc", " ".join(f"Sentence number {i} here." for i in range(n_sentences)))

    def test_sixty_sentences_into_groups_of_25(self):
        chunks = chunk_document(self._doc(60), 25)
        assert [len(c.sentences) for c in chunks] == [25, 25, 10]
        assert [c.id for c in chunks] == ["doc#0", "doc#1", "doc#2"]

    def test_short_tail_merges_backward(self):
        # 52 sentences, n=25, min_tail=5: tail of 2 joins the second chunk
        chunks = chunk_document(self._doc(52), 25, min_tail=5)
        assert [len(c.sentences) for c in chunks] == [25, 27]

    def test_tail_at_threshold_stands_alone(self):
        chunks = chunk_document(self._doc(55), 25, min_tail=5)
        assert [len(c.sentences) for c in chunks] == [25, 25, 5]

    def test_single_short_document_is_one_chunk(self):
        chunks = chunk_document(self._doc(3), 25, min_tail=5)
        assert len(chunks) == 1
        assert chunks[0].id == "doc#0"

    def test_no_sentences_lost(self):
        doc = self._doc(97)
        chunks = chunk_document(doc, 10, min_tail=3)
        total = sum(len(c.sentences) for c in chunks)
        assert total == 97
        rebuilt = " ".join(c.raw_text for c in chunks)
        assert rebuilt == doc.raw_text

    def test_empty_document_rejected(self):
        with pytest.raises(EmptyDocument):
            chunk_document(Document("d", ""), 10)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            chunk_document(self._doc(5), 0)
        with pytest.raises(ValueError):
            chunk_document(self._doc(5), 10, min_tail=0)

    def test_chunk_corpus_inherits_labels(self):
        corpus = LabeledCorpus(
            (self._doc(30), Document("short", "One. Two. Three.")),
            (1, 0),
            ("easy", "hard"),
        )
        chunked = chunk_corpus(corpus, 10)
        assert len(chunked) == 4
        assert chunked.labels == (1, 1, 1, 0)
        assert {d.id for d in chunked.documents} == {"doc#0", "doc#1", "doc#2", "short#0"}


class TestStratifiedSplit:
    def test_seven_per_class_gives_5_1_1(self):
        labels = [0] * 7 + [1] * 7
        split = stratified_split(labels, (0.8, 0.1, 0.1), seed=0)
        for part, want in ((split.train, 5), (split.val, 1), (split.test, 1)):
            counts = Counter(labels[i] for i in part)
            assert counts[0] == want and counts[1] == want

    def test_partition(self):
        labels = [0] * 13 + [1] * 9 + [2] * 21
        split = stratified_split(labels, seed=3)
        combined = sorted(split.train + split.val + split.test)
        assert combined == list(range(len(labels)))

    def test_per_class_deviation_at_most_one(self):
        rng = random.Random(10)
        for trial in range(30):
            counts = [rng.randint(3, 40) for _ in range(rng.randint(2, 4))]
            labels = [c for c, n in enumerate(counts) for _ in range(n)]
            split = stratified_split(labels, (0.8, 0.1, 0.1), seed=trial)
            for part, ratio in ((split.train, 0.8), (split.val, 0.1), (split.test, 0.1)):
                got = Counter(labels[i] for i in part)
                for c, n in enumerate(counts):
                    assert abs(got[c] - n * ratio) <= 1.0 + 1e-9

    def test_same_seed_same_split(self):
        labels = [0] * 20 + [1] * 20
        assert stratified_split(labels, seed=7) == stratified_split(labels, seed=7)

    def test_different_seed_different_split(self):
        labels = [0] * 20 + [1] * 20
        assert stratified_split(labels, seed=1) != stratified_split(labels, seed=2)

    def test_parts_are_sorted(self):
        split = stratified_split([0] * 10 + [1] * 10, seed=5)
        for part in (split.train, split.val, split.test):
            assert list(part) == sorted(part)

    def test_invalid_ratios(self):
        with pytest.raises(ValueError):
            stratified_split([0, 0, 1, 1], (0.5, 0.5))
        with pytest.raises(ValueError):
            stratified_split([0, 0, 1, 1], (0.5, 0.4, 0.2))
        with pytest.raises(ValueError):
            stratified_split([0, 0, 1, 1], (1.2, -0.1, -0.1))

    def test_empty_labels(self):
        with pytest.raises(EmptyCorpus):
            stratified_split([])

    def test_empty_class(self):
        with pytest.raises(EmptyClass):
            stratified_split([0, 0, 2, 2])


class TestStratifiedKfold:
    def test_eleven_documents_deal_3_2_2_2_2(self):
        labels = [0] * 11
        splits = stratified_kfold(labels, k=5, seed=0)
        sizes = sorted(len(s.test) for s in splits)
        assert sizes == [2, 2, 2, 2, 3]

    def test_test_folds_partition_corpus(self):
        labels = [0] * 17 + [1] * 12 + [2] * 8
        splits = stratified_kfold(labels, k=5, seed=4)
        seen = []
        for s in splits:
            seen.extend(s.test)
        assert sorted(seen) == list(range(len(labels)))

    def test_rotation_val_follows_test(self):
        labels = [0] * 15
        splits = stratified_kfold(labels, k=3, seed=0)
        test_sets = [set(s.test) for s in splits]
        for i, s in enumerate(splits):
            assert set(s.val) == test_sets[(i + 1) % 3]
            assert set(s.train) == set(range(15)) - test_sets[i] - test_sets[(i + 1) % 3]

    def test_every_split_is_a_partition(self):
        labels = [0] * 10 + [1] * 10
        for s in stratified_kfold(labels, k=4, seed=2):
            combined = sorted(s.train + s.val + s.test)
            assert combined == list(range(20))

    def test_stratification_balance(self):
        labels = [0] * 20 + [1] * 10
        splits = stratified_kfold(labels, k=5, seed=1)
        for s in splits:
            got = Counter(labels[i] for i in s.test)
            assert got[0] == 4 and got[1] == 2

    def test_k_below_three_rejected(self):
        with pytest.raises(ValueError):
            stratified_kfold([0] * 10, k=2)

    def test_class_smaller_than_k(self):
        with pytest.raises(ClassSmallerThanK):
            stratified_kfold([0] * 10 + [1] * 2, k=3)

    def test_deterministic(self):
        labels = [0] * 9 + [1] * 9
        assert stratified_kfold(labels, 3, seed=6) == stratified_kfold(labels, 3, seed=6)


class TestGenerateSynthetic:
    def test_shape_and_names(self):
        corpus = generate_synthetic(3, 4, seed=0)
        assert len(corpus) == 12
        assert corpus.class_names == ("level-0", "level-1", "level-2")
        assert corpus.labels == (0,) * 4 + (1,) * 4 + (2,) * 4
        assert corpus.documents[0].id == "synth-0-0"
        assert corpus.documents[-1].id == "synth-2-3"

    def test_deterministic(self):
        a = generate_synthetic(3, 5, seed=42)
        b = generate_synthetic(3, 5, seed=42)
        assert [d.raw_text for d in a.documents] == [d.raw_text for d in b.documents]

    def test_seed_changes_text(self):
        a = generate_synthetic(2, 2, seed=1)
        b = generate_synthetic(2, 2, seed=2)
        assert [d.raw_text for d in a.documents] != [d.raw_text for d in b.documents]

    def test_difficulty_grows_with_class(self):
        corpus = generate_synthetic(3, 10, seed=0)
        mean_asl = []
        mean_poly = []
        for label in range(3):
            docs = [d for d, l in zip(corpus.documents, corpus.labels) if l == label]
            profiles = [profile(d) for d in docs]
            mean_asl.append(sum(asl(p) for p in profiles) / len(profiles))
            mean_poly.append(
                sum(p.polysyllables / p.total_words for p in profiles) / len(profiles)
            )
        assert mean_asl[0] < mean_asl[1] < mean_asl[2]
        assert mean_poly[0] < mean_poly[1] < mean_poly[2]

    def test_sentence_count_range_respected(self):
        corpus = generate_synthetic(2, 5, seed=3, sentences_per_doc=(5, 8))
        for doc in corpus.documents:
            assert 5 <= len(doc.sentences) <= 8

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            generate_synthetic(1, 5)
        with pytest.raises(ValueError):
            generate_synthetic(2, 0)
        with pytest.raises(ValueError):
            generate_synthetic(2, 5, sentences_per_doc=(0, 4))
        with pytest.raises(ValueError):
            generate_synthetic(2, 5, sentences_per_doc=(8, 4))

    def test_subset_view(self):
        corpus = generate_synthetic(2, 3, seed=0)
        sub = corpus.subset([0, 4])
        assert len(sub) == 2
        assert sub.labels == (0, 1)
        assert sub.class_names == corpus.class_names
        assert sub.documents[0] is corpus.documents[0]

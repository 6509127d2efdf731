"""Shared helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

import pytest

from readlab.corpus import MANIFEST_HEADER


def write_manifest(directory: Path, rows: list[tuple[str, str, str, int]]) -> Path:
    """Write doc files and a manifest; rows are (file_name, text, class_name, index)."""
    directory.mkdir(parents=True, exist_ok=True)
    lines = [MANIFEST_HEADER]
    for file_name, text, class_name, index in rows:
        (directory / file_name).write_text(text, encoding="utf-8")
        lines.append(f"{file_name}\t{class_name}\t{index}")
    manifest = directory / "manifest.tsv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


@pytest.fixture
def tiny_manifest(tmp_path: Path) -> Path:
    """Two classes, three short documents."""
    return write_manifest(
        tmp_path / "tiny",
        [
            ("a.txt", "The cat sat on the mat. It was warm.", "easy", 0),
            ("b.txt", "A dog ran far. The sun rose early today.", "easy", 0),
            ("c.txt", "Extraordinary circumstances necessitate unprecedented determination. Every formidable undertaking demands perseverance.", "hard", 1),
        ],
    )

from __future__ import annotations

from pathlib import Path

import pytest

from bomi import BomiModel, Severity, load

ROOT = Path(__file__).resolve().parents[1]
CORPUS_DIR = ROOT / "corpus"
CORPUS_FILES = sorted(CORPUS_DIR.glob("*.bomi"))


def load_ok(text: str, file: str = "<test>") -> BomiModel:
    """Parse + resolve, failing the test on any diagnostic."""
    model, diagnostics = load(text, file)
    assert not diagnostics, [str(d.span) + " " + d.message for d in diagnostics]
    assert model is not None
    return model


def load_errors(text: str, file: str = "<test>"):
    model, diagnostics = load(text, file)
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    return model, errors, diagnostics


def read_corpus(name: str) -> str:
    return (CORPUS_DIR / f"{name}.bomi").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_a() -> BomiModel:
    return load_ok(read_corpus("company-a"), "company-a.bomi")


@pytest.fixture(scope="session")
def corpus_models() -> dict[str, BomiModel]:
    out = {}
    for path in CORPUS_FILES:
        out[path.stem] = load_ok(path.read_text(encoding="utf-8"), path.name)
    return out

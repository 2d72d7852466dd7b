import random
from pathlib import Path

import pytest

from wusandhi.emitter import Frontend
from wusandhi.lexicon import Lexicon, LexiconEntry
from wusandhi.segmenter import HmmParams

DATA = Path(__file__).parent / "data"

SENTENCE_5 = "儂弗要弗二弗三個"


@pytest.fixture(scope="session")
def fe():
    return Frontend()


@pytest.fixture(scope="session")
def lex(fe):
    return fe.lexicon


@pytest.fixture
def rng():
    return random.Random(20231201)


def make_lexicon(weights, roms=None):
    roms = roms or {}
    return Lexicon(LexiconEntry(w, tuple(roms.get(w, ())), k) for w, k in weights.items())


def random_hmm(rng, alphabet, unseen=1):
    """Random normalised BMES parameters over ``alphabet``; the last ``unseen`` chars use the floor."""
    import math

    def logsoftmax(keys):
        xs = [rng.random() + 0.05 for _ in keys]
        z = sum(xs)
        return {k: math.log(x / z) for k, x in zip(keys, xs)}

    seen = alphabet[: len(alphabet) - unseen]
    return HmmParams(
        start_logp=logsoftmax("BS"),
        trans_logp={"B": logsoftmax("ME"), "M": logsoftmax("ME"), "E": logsoftmax("BS"), "S": logsoftmax("BS")},
        emit_logp={s: {c: math.log(rng.uniform(0.01, 0.3)) for c in seen} for s in "BMES"},
        emit_floor=math.log(rng.uniform(0.001, 0.01)),
    )


_ACCEPTANCE = []


def record_criterion(number, passed, detail=""):
    _ACCEPTANCE.append((number, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")

import os
import pathlib

import pytest

import nanoie

ROOT = pathlib.Path(os.environ.get("NANOIE_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
LEXICON = ROOT / "data" / "lexicon_mini.json"


@pytest.fixture(scope="module")
def lexicon():
    return nanoie.Lexicon.load(LEXICON)


def test_composition():
    assert nanoie.standardize_composition("0.5 vol.%") == 0.005
    with pytest.raises(nanoie.CompositionError):
        nanoie.standardize_composition("150 wt%")
    with pytest.raises(nanoie.NanoieError):
        nanoie.standardize_composition("lots")


def test_names(lexicon):
    assert lexicon.standardize_name("silicon dioxide", "filler")[0] == "Silica"
    assert lexicon.standardize_name("ps", "matrix", abbreviation=True) == ("PS", True, 1.0)
    with pytest.raises(nanoie.InvalidArgument):
        lexicon.standardize_name("x", "resin")


def test_evaluate_hand_count(lexicon):
    gold = nanoie.parse_gold_file((ROOT / "tests/fixtures/handcount/gold.json").read_text())
    docs = []
    for doc_id, golds in sorted(gold.items()):
        golds = [lexicon.standardize_sample(g)[0] for g in golds]
        path = next((ROOT / "tests/fixtures/handcount/predictions").glob(doc_id + ".*"))
        raw, _ = nanoie.parse_prediction_output(path.read_text())
        preds = [lexicon.standardize_sample(p)[0] for p in raw]
        docs.append((preds, golds))
    report = nanoie.evaluate_corpus(docs)
    assert report["strict"]["tp"] == 5
    partial = report["partial"]
    assert (partial["tp"], partial["fp"], partial["fn"]) == (23, 10, 7)
    assert partial["f1"] == pytest.approx(46 / 63)


def test_unstandardized_input_is_rejected():
    raw, _ = nanoie.parse_prediction_output('[{"Matrix Chemical Name": "PS", "Filler Chemical Name": "silica"}]')
    with pytest.raises(nanoie.NotStandardized):
        nanoie.evaluate(raw, raw)


def test_vote_and_triage(lexicon):
    raw, _ = nanoie.parse_prediction_output(
        '[{"Matrix Chemical Name": "PS", "Filler Chemical Name": "silica", "Filler Composition Mass": "5 wt%"},'
        ' {"Matrix Chemical Name": "PE", "Filler Chemical Name": "alumina", "Filler Composition Mass": "1 wt%"}]'
    )
    std = [lexicon.standardize_sample(s)[0] for s in raw]
    assert len(nanoie.vote([std, std[:1]], 2)) == 1
    assert len(nanoie.vote([std, std[:1]], 1)) == 2
    assert nanoie.assignment(std, std) == [(0, 0, 3), (1, 1, 3)]
    report = nanoie.triage_report("doc", std[:1], raw, std)
    assert report.startswith("File name: doc\n\nPredicted sample 1 is not matched")


def test_condense():
    body = "Polystyrene is the matrix. " + "Unrelated weather text here. " * 20 + "Silica filler at 5 wt% loading."
    text, selected = nanoie.condense(body, 1, segment_tokens=8)
    assert selected == sorted(selected)
    assert "Polystyrene" in text

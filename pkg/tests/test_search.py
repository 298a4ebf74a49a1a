"""Tokenizer, edit distance, search modes, ranking, and the fuzzy oracle."""

from __future__ import annotations

import random

import pytest

from conftest import TickClock, seed_product
from swarmdbg.errors import EmptyQuery
from swarmdbg.ingest import Ingestor, load_catalog
from swarmdbg.search import (
    MatchedField,
    SearchMode,
    SearchQuery,
    damerau_levenshtein,
    fuzzy_distance_bound,
    search_breakpoints,
    tokenize_identifier,
)
from swarmdbg.store import QueryFilter, Store


# -- tokenizer ---------------------------------------------------------------


@pytest.mark.parametrize("name,tokens", [
    ("BibtexParser", ["bibtex", "parser"]),
    ("parseFileContent", ["parse", "file", "content"]),
    ("storeSource(String)", ["store", "source", "string"]),
    ("URLUtil", ["url", "util"]),
    ("openExternalViewer", ["open", "external", "viewer"]),
    ("main", ["main"]),
    ("run_command2", ["run", "command2"]),
    ("net.sf.jabref.BasePanel", ["net", "sf", "jabref", "base", "panel"]),
    ("", []),
    ("___", []),
])
def test_tokenize_identifier(name, tokens):
    assert tokenize_identifier(name) == tokens


# -- edit distance ------------------------------------------------------------


@pytest.mark.parametrize("a,b,d", [
    ("facotry", "factory", 1),
    ("parser", "parser", 0),
    ("abc", "", 3),
    ("", "ab", 2),
    ("kitten", "sitting", 3),
    ("ab", "ba", 1),
    ("ca", "abc", 3),
    ("panel", "pannel", 1),
    ("base", "vase", 1),
])
def test_damerau_levenshtein_known_distances(a, b, d):
    assert damerau_levenshtein(a, b) == d


def test_damerau_levenshtein_is_symmetric():
    rng = random.Random(4)
    alphabet = "abcdef"
    for _ in range(200):
        a = "".join(rng.choices(alphabet, k=rng.randint(0, 8)))
        b = "".join(rng.choices(alphabet, k=rng.randint(0, 8)))
        assert damerau_levenshtein(a, b) == damerau_levenshtein(b, a)


def test_distance_zero_iff_equal():
    rng = random.Random(5)
    for _ in range(100):
        a = "".join(rng.choices("abc", k=rng.randint(0, 6)))
        b = "".join(rng.choices("abc", k=rng.randint(0, 6)))
        assert (damerau_levenshtein(a, b) == 0) == (a == b)


def test_fuzzy_distance_bound_schedule():
    assert fuzzy_distance_bound("ab") == 1
    assert fuzzy_distance_bound("abcde") == 1
    assert fuzzy_distance_bound("abcdef") == 2
    assert fuzzy_distance_bound("factory") == 2


# -- mode semantics -------------------------------------------------------------


def _corpus_store(tmp_path, names, label="corpus"):
    """One breakpoint per identifier; created_at strictly increasing."""
    store = Store(tmp_path / f"{label}.db")
    seed_product(store, name=label, task_keys=("T1",))
    ingestor = Ingestor(store, clock=TickClock())
    session = ingestor.open_session("alice", label, "T1")
    for i, ident in enumerate(names):
        ingestor.record_breakpoint(session.id, f"p{i}.{ident}", i + 1)
    return store


def _hit_names(snapshot, hits):
    return [snapshot.types[h.breakpoint.type_id].simple_name for h in hits]


def test_match_mode_hits_on_token_equality(tmp_path):
    store = _corpus_store(tmp_path, ["BibtexParser", "EntryEditor"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot, SearchQuery("parser", SearchMode.MATCH))
    assert _hit_names(snapshot, hits) == ["BibtexParser"]
    assert hits[0].score == 1.0
    assert hits[0].matched_field is MatchedField.TYPE_NAME


def test_match_mode_requires_whole_token(tmp_path):
    store = _corpus_store(tmp_path, ["BibtexParser"])
    snapshot = store.snapshot()
    assert search_breakpoints(snapshot, SearchQuery("pars", SearchMode.MATCH)) == []
    assert search_breakpoints(
        snapshot, SearchQuery("BibtexParser", SearchMode.MATCH)) == []


def test_match_is_case_insensitive(tmp_path):
    store = _corpus_store(tmp_path, ["BibtexParser"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot, SearchQuery("Parser", SearchMode.MATCH))
    assert len(hits) == 1


def test_fuzzy_mode_scores_by_distance(tmp_path):
    store = _corpus_store(tmp_path, ["WidgetFactory", "EntryEditor"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot, SearchQuery("facotry", SearchMode.FUZZY))
    assert _hit_names(snapshot, hits) == ["WidgetFactory"]
    assert hits[0].score == pytest.approx(1 - 1 / 3)


def test_fuzzy_exact_token_scores_one(tmp_path):
    store = _corpus_store(tmp_path, ["WidgetFactory"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot, SearchQuery("factory", SearchMode.FUZZY))
    assert hits[0].score == 1.0


def test_fuzzy_respects_length_schedule(tmp_path):
    store = _corpus_store(tmp_path, ["BasePanel"])
    snapshot = store.snapshot()
    # "panl" (len 4) allows d=1: token "panel" is one insertion away.
    assert len(search_breakpoints(
        snapshot, SearchQuery("panl", SearchMode.FUZZY))) == 1
    # d=2 edits need a query longer than 5 characters.
    assert search_breakpoints(
        snapshot, SearchQuery("pnl", SearchMode.FUZZY)) == []
    assert len(search_breakpoints(
        snapshot, SearchQuery("pannell", SearchMode.FUZZY))) == 1


def test_wildcard_mode_globs_token_sequence(tmp_path):
    store = _corpus_store(tmp_path, ["BibtexParser", "EntryEditor"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot,
                              SearchQuery("Bib*Parser", SearchMode.WILDCARD))
    assert _hit_names(snapshot, hits) == ["BibtexParser"]
    assert search_breakpoints(
        snapshot, SearchQuery("Bib*Editor", SearchMode.WILDCARD)) == []


def test_wildcard_question_mark_matches_one_character(tmp_path):
    store = _corpus_store(tmp_path, ["BasePanel"])
    snapshot = store.snapshot()
    assert len(search_breakpoints(
        snapshot, SearchQuery("base pane?", SearchMode.WILDCARD))) == 1
    assert search_breakpoints(
        snapshot, SearchQuery("base pane??", SearchMode.WILDCARD)) == []


def test_blank_query_rejected(tmp_path):
    store = _corpus_store(tmp_path, ["BasePanel"])
    snapshot = store.snapshot()
    for text in ("", "   "):
        with pytest.raises(EmptyQuery):
            search_breakpoints(snapshot, SearchQuery(text, SearchMode.MATCH))


def test_method_signature_is_searchable(tmp_path):
    store = Store(tmp_path / "methods.db")
    seed_product(store, name="meth", task_keys=("T1",))
    load_catalog(store, {"products": [{
        "name": "meth",
        "types": [{
            "full_name": "app.EntityEditor",
            "source_path": "app/EntityEditor.java",
            "methods": [{"signature": "storeSource(String)",
                         "declared_line": 600}],
        }],
    }]})
    ingestor = Ingestor(store, clock=TickClock())
    session = ingestor.open_session("alice", "meth", "T1")
    ingestor.record_breakpoint(session.id, "app.EntityEditor", 610)
    snapshot = store.snapshot()

    hits = search_breakpoints(snapshot, SearchQuery("source", SearchMode.MATCH))
    assert len(hits) == 1
    assert hits[0].matched_field is MatchedField.METHOD_SIGNATURE

    hits = search_breakpoints(snapshot, SearchQuery("editor", SearchMode.MATCH))
    assert hits[0].matched_field is MatchedField.TYPE_NAME


def test_ranking_score_then_recency_then_id(tmp_path):
    store = _corpus_store(
        tmp_path, ["ParserOne", "ParserTwo", "ParsersAlmost"])
    snapshot = store.snapshot()
    hits = search_breakpoints(snapshot, SearchQuery("parser", SearchMode.FUZZY))
    names = _hit_names(snapshot, hits)
    # Exact token (score 1) wins; newer breakpoint first among equals;
    # "parsers" is distance 1, so it trails.
    assert names == ["ParserTwo", "ParserOne", "ParsersAlmost"]
    assert hits[0].score == hits[1].score == 1.0
    assert hits[2].score < 1.0


def test_ranking_is_reproducible(tmp_path):
    store = _corpus_store(tmp_path, [f"Parser{chr(65 + i)}" for i in range(10)])
    snapshot = store.snapshot()
    query = SearchQuery("parser", SearchMode.MATCH)
    first = [h.breakpoint.id for h in search_breakpoints(snapshot, query)]
    second = [h.breakpoint.id for h in search_breakpoints(snapshot, query)]
    assert first == second


def test_filter_scopes_search(tmp_path):
    store = Store(tmp_path / "scoped.db")
    seed_product(store, name="scoped", task_keys=("T1", "T2"))
    ingestor = Ingestor(store, clock=TickClock())
    s1 = ingestor.open_session("alice", "scoped", "T1")
    s2 = ingestor.open_session("bob", "scoped", "T2")
    ingestor.record_breakpoint(s1.id, "a.Parser", 1)
    ingestor.record_breakpoint(s2.id, "b.Parser", 1)
    snapshot = store.snapshot()
    task_t2 = next(t.id for t in snapshot.tasks.values() if t.issue_key == "T2")

    everywhere = search_breakpoints(snapshot, SearchQuery("parser", SearchMode.MATCH))
    scoped = search_breakpoints(snapshot, SearchQuery(
        "parser", SearchMode.MATCH, QueryFilter(task_ids=frozenset({task_t2}))))
    assert len(everywhere) == 2
    assert len(scoped) == 1
    assert scoped[0].breakpoint.session_id == s2.id


# -- oracle ---------------------------------------------------------------------


def osa_reference(a: str, b: str) -> int:
    """Full-matrix optimal string alignment distance, kept independent."""
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[-1][-1]


_PARTS = ["parse", "file", "content", "store", "source", "entry", "editor",
          "panel", "base", "bib", "tex", "url", "util", "format", "author",
          "main", "run", "command", "open", "data"]


def random_identifier(rng: random.Random) -> str:
    parts = rng.sample(_PARTS, rng.randint(1, 3))
    return parts[0] + "".join(p.capitalize() for p in parts[1:])


def mutate(rng: random.Random, word: str) -> str:
    if not word:
        return word
    i = rng.randrange(len(word))
    op = rng.randint(0, 3)
    if op == 0:
        return word[:i] + word[i + 1:]
    if op == 1:
        return word[:i] + rng.choice("abcdefgh") + word[i:]
    if op == 2:
        return word[:i] + rng.choice("abcdefgh") + word[i + 1:]
    if i + 1 < len(word):
        return word[:i] + word[i + 1] + word[i] + word[i + 2:]
    return word


def run_fuzzy_oracle(tmp_path, seed: int, corpus_size: int,
                     queries: int) -> None:
    rng = random.Random(seed)
    names = [random_identifier(rng) for _ in range(corpus_size)]
    store = _corpus_store(tmp_path, names, label=f"oracle{seed}")
    snapshot = store.snapshot()
    by_type = {bp.type_id: bp for bp in snapshot.breakpoints.values()}
    tokensets = {
        bp.id: tokenize_identifier(snapshot.types[tid].simple_name)
        for tid, bp in by_type.items()}

    for _ in range(queries):
        base = rng.choice(rng.choice(names and [tokenize_identifier(n)
                                                for n in names]))
        text = mutate(rng, base) if rng.random() < 0.8 else base
        if not text.strip():
            continue
        bound = 1 if len(text) <= 5 else 2
        needle = text.lower()

        fuzzy = search_breakpoints(snapshot, SearchQuery(text, SearchMode.FUZZY))
        expected = {bp_id for bp_id, tokens in tokensets.items()
                    if any(osa_reference(t, needle) <= bound for t in tokens)}
        assert {h.breakpoint.id for h in fuzzy} == expected

        match = search_breakpoints(snapshot, SearchQuery(text, SearchMode.MATCH))
        assert {h.breakpoint.id for h in match} <= {h.breakpoint.id for h in fuzzy}
        assert all(h.score == 1.0 for h in match)
    store.close()


def test_fuzzy_results_equal_brute_force_oracle(tmp_path):
    for seed in range(5):
        run_fuzzy_oracle(tmp_path, seed, corpus_size=60, queries=20)


def test_match_subset_of_fuzzy_on_exhaustive_token_queries(tmp_path):
    rng = random.Random(77)
    names = [random_identifier(rng) for _ in range(40)]
    store = _corpus_store(tmp_path, names, label="subset")
    snapshot = store.snapshot()
    all_tokens = sorted({t for n in names for t in tokenize_identifier(n)})
    for token in all_tokens:
        match = {h.breakpoint.id for h in search_breakpoints(
            snapshot, SearchQuery(token, SearchMode.MATCH))}
        fuzzy = {h.breakpoint.id for h in search_breakpoints(
            snapshot, SearchQuery(token, SearchMode.FUZZY))}
        assert match <= fuzzy
        assert match, f"token {token!r} came from the corpus, must match"
